#include "radet/dataset_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace radet {
namespace fs = std::filesystem;

namespace {

constexpr const char* kFormatTag = "radet-dataset 1";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  try {
    size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("");
    return v;
  } catch (const std::exception&) {
    throw std::runtime_error("malformed " + what + " value '" + s + "'");
  }
}

std::string frame_filename(int f) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06d.txt", f);
  return buf;
}

}  // namespace

void save_dataset(const Dataset& ds, const std::string& dir) {
  std::error_code ec;
  fs::create_directories(fs::path(dir) / "frames", ec);
  if (ec) throw std::runtime_error("cannot create dataset directory " + dir);

  {
    std::ofstream meta(fs::path(dir) / "meta.txt");
    if (!meta) throw std::runtime_error("cannot write dataset meta in " + dir);
    meta << "format " << kFormatTag << "\n";
    meta << "scenario " << scenario_id(ds.scenario) << "\n";
    meta << "seed " << ds.seed << "\n";
    meta << "frames " << ds.n_frames() << "\n";
    meta << "radar_n_samples " << ds.radar.n_samples << "\n";
    meta << "radar_sample_period_s " << fmt_double(ds.radar.sample_period_s) << "\n";
    meta << "radar_n_chirps " << ds.radar.n_chirps << "\n";
    meta << "radar_chirp_period_s " << fmt_double(ds.radar.chirp_period_s) << "\n";
    meta << "radar_slope_hz_per_s " << fmt_double(ds.radar.slope_hz_per_s) << "\n";
    meta << "radar_carrier_hz " << fmt_double(ds.radar.carrier_hz) << "\n";
    meta << "bin_width_m " << fmt_double(range_bin_width_m(ds.radar)) << "\n";
    if (!meta.good()) throw std::runtime_error("failed writing dataset meta in " + dir);
  }

  for (int f = 0; f < ds.n_frames(); ++f) {
    const auto& p = ds.profiles[f];
    std::ofstream out(fs::path(dir) / "frames" / frame_filename(f));
    if (!out) throw std::runtime_error("cannot write frame file in " + dir);
    out << "frame " << p.frame_id << "\n";
    out << "labels";
    for (int b : ds.labels[f]) out << ' ' << b;
    out << "\n";
    out << "bin magnitude\n";
    for (int i = 0; i < p.size(); ++i) out << i << ' ' << fmt_double(p.magnitudes[i]) << "\n";
    if (!out.good()) throw std::runtime_error("failed writing frame file in " + dir);
  }
}

Dataset load_dataset(const std::string& dir) {
  std::ifstream meta(fs::path(dir) / "meta.txt");
  if (!meta) throw std::runtime_error("no dataset meta file in " + dir);

  Dataset ds;
  int n_frames = -1;
  int n_bins_meta = -1;
  std::string line;
  while (std::getline(meta, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string key;
    ss >> key;
    std::string rest;
    std::getline(ss, rest);
    if (!rest.empty() && rest.front() == ' ') rest.erase(0, 1);
    if (key == "format") {
      if (rest != kFormatTag) throw std::runtime_error("unsupported dataset format '" + rest + "'");
    } else if (key == "scenario") {
      ds.scenario = parse_scenario(rest);
    } else if (key == "seed") {
      ds.seed = std::strtoull(rest.c_str(), nullptr, 10);
    } else if (key == "frames") {
      n_frames = static_cast<int>(parse_double(rest, "frames"));
    } else if (key == "radar_n_samples") {
      ds.radar.n_samples = static_cast<int>(parse_double(rest, key));
      n_bins_meta = ds.radar.n_samples;
    } else if (key == "radar_sample_period_s") {
      ds.radar.sample_period_s = parse_double(rest, key);
    } else if (key == "radar_n_chirps") {
      ds.radar.n_chirps = static_cast<int>(parse_double(rest, key));
    } else if (key == "radar_chirp_period_s") {
      ds.radar.chirp_period_s = parse_double(rest, key);
    } else if (key == "radar_slope_hz_per_s") {
      ds.radar.slope_hz_per_s = parse_double(rest, key);
    } else if (key == "radar_carrier_hz") {
      ds.radar.carrier_hz = parse_double(rest, key);
    } else if (key == "bin_width_m") {
      // informational; recomputed from the radar parameters
    } else {
      throw std::runtime_error("unknown dataset meta key '" + key + "'");
    }
  }
  if (n_frames < 0) throw std::runtime_error("dataset meta missing frame count");
  validate(ds.radar);
  const double bw = range_bin_width_m(ds.radar);

  for (int f = 0; f < n_frames; ++f) {
    std::ifstream in(fs::path(dir) / "frames" / frame_filename(f));
    if (!in) throw std::runtime_error("missing frame file " + frame_filename(f) + " in " + dir);

    std::string word;
    int frame_id = 0;
    if (!(in >> word) || word != "frame" || !(in >> frame_id))
      throw std::runtime_error("malformed frame header in " + frame_filename(f));

    if (!(in >> word) || word != "labels")
      throw std::runtime_error("malformed labels line in " + frame_filename(f));
    std::getline(in, line);
    LabelSet labels;
    {
      std::istringstream ls(line);
      int b;
      while (ls >> b) labels.push_back(b);
    }

    std::getline(in, line);
    if (line != "bin magnitude")
      throw std::runtime_error("malformed column header in " + frame_filename(f));

    RangeProfile p;
    p.frame_id = frame_id;
    p.bin_width_m = bw;
    p.magnitudes.resize(n_bins_meta > 0 ? n_bins_meta : 0);
    int rows = 0;
    int bin;
    std::string value;
    while (in >> bin >> value) {
      if (bin != rows || bin >= static_cast<int>(p.magnitudes.size()))
        throw std::runtime_error("unexpected bin index in " + frame_filename(f));
      p.magnitudes[bin] = parse_double(value, "magnitude");
      ++rows;
    }
    if (rows != static_cast<int>(p.magnitudes.size()))
      throw std::runtime_error("truncated frame file " + frame_filename(f));
    in.clear();
    std::string trailing;
    if (in >> trailing)
      throw std::runtime_error("trailing content in " + frame_filename(f));

    ds.profiles.push_back(std::move(p));
    ds.labels.push_back(std::move(labels));
  }
  return ds;
}

}  // namespace radet
