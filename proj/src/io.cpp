#include "afc/io.hpp"

#include <array>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace afc::io {
namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);  // binary: '\n' on every platform
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open for reading: " + path);
  return f;
}

[[noreturn]] void bad_row(const std::string& path, std::size_t lineno,
                          const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(lineno) + ": " + what);
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_num(const std::string& s, const std::string& path,
                 std::size_t lineno) {
  const char* b = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(b, &end);
  if (end == b || *end != '\0')
    bad_row(path, lineno, "not a number: '" + s + "'");
  return v;
}

struct CsvReader {
  std::string path;
  std::ifstream file;
  std::size_t lineno = 0;

  explicit CsvReader(const std::string& p) : path(p), file(open_in(p)) {}

  void expect_header(const std::string& want) {
    std::string line;
    if (!std::getline(file, line))
      throw std::runtime_error(path + ": empty file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != want)
      throw std::runtime_error(path + ": expected header '" + want +
                               "', got '" + line + "'");
  }

  std::string read_header() {
    std::string line;
    if (!std::getline(file, line))
      throw std::runtime_error(path + ": empty file");
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  bool next_row(std::vector<double>& row, std::size_t n_cols) {
    std::string line;
    if (!std::getline(file, line)) return false;
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) return next_row(row, n_cols);
    const auto cells = split(line);
    if (cells.size() != n_cols)
      bad_row(path, lineno,
              "expected " + std::to_string(n_cols) + " columns, got " +
                  std::to_string(cells.size()));
    row.resize(n_cols);
    for (std::size_t i = 0; i < n_cols; ++i)
      row[i] = parse_num(cells[i], path, lineno);
    return true;
  }
};

// Reconstruct the uniform grid a column of sample positions came from.
void check_uniform(const std::vector<double>& x, const std::string& path) {
  const std::size_t n = x.size();
  if (n < 2) throw std::runtime_error(path + ": too few rows");
  const double step = (x.back() - x.front()) / static_cast<double>(n - 1);
  if (!(step > 0.0)) throw std::runtime_error(path + ": axis not increasing");
  const double tol = 1e-6 * step;
  for (std::size_t i = 0; i < n; ++i) {
    const double want = x.front() + static_cast<double>(i) * step;
    if (std::abs(x[i] - want) > tol)
      throw std::runtime_error(path + ": axis is not uniformly spaced");
  }
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void write_spectrum_csv(const std::string& path, const SpectrumTable& table) {
  const std::size_t n = table.grid.n_points;
  for (const auto* col : {&table.d, &table.delta_n, &table.n_g})
    if (col->has_value() && (*col)->size() != n)
      throw std::invalid_argument("write_spectrum_csv: column length mismatch");

  auto f = open_out(path);
  f << "nu_hz";
  if (table.d) f << ",d";
  if (table.delta_n) f << ",delta_n";
  if (table.n_g) f << ",n_g";
  f << '\n';
  for (std::size_t i = 0; i < n; ++i) {
    f << format_double(table.grid.nu(i));
    if (table.d) f << ',' << format_double((*table.d)[i]);
    if (table.delta_n) f << ',' << format_double((*table.delta_n)[i]);
    if (table.n_g) f << ',' << format_double((*table.n_g)[i]);
    f << '\n';
  }
}

SpectrumTable load_spectrum_csv(const std::string& path) {
  CsvReader r(path);
  const std::string header = r.read_header();
  const auto cols = split(header);
  if (cols.empty() || cols[0] != "nu_hz")
    throw std::runtime_error(path + ": first column must be nu_hz");
  int i_d = -1, i_dn = -1, i_ng = -1;
  for (std::size_t i = 1; i < cols.size(); ++i) {
    if (cols[i] == "d") i_d = static_cast<int>(i);
    else if (cols[i] == "delta_n") i_dn = static_cast<int>(i);
    else if (cols[i] == "n_g") i_ng = static_cast<int>(i);
    else throw std::runtime_error(path + ": unknown column '" + cols[i] + "'");
  }

  std::vector<double> nu, d, dn, ng;
  std::vector<double> row;
  while (r.next_row(row, cols.size())) {
    nu.push_back(row[0]);
    if (i_d >= 0) d.push_back(row[static_cast<std::size_t>(i_d)]);
    if (i_dn >= 0) dn.push_back(row[static_cast<std::size_t>(i_dn)]);
    if (i_ng >= 0) ng.push_back(row[static_cast<std::size_t>(i_ng)]);
  }
  check_uniform(nu, path);
  const auto n = nu.size();
  const double dnu = (nu.back() - nu.front()) / static_cast<double>(n - 1);

  SpectrumTable t;
  // point k sits at center - span/2 + k*dnu, so the axis midpoint of the
  // samples is center - dnu/2, not center
  t.grid = make_grid(nu.front() + 0.5 * dnu * static_cast<double>(n),
                     dnu * static_cast<double>(n), n);
  if (i_d >= 0) t.d = std::move(d);
  if (i_dn >= 0) t.delta_n = std::move(dn);
  if (i_ng >= 0) t.n_g = std::move(ng);
  return t;
}

void write_scan_csv(const std::string& path,
                    const std::vector<ReflectionScanPoint>& scan) {
  auto f = open_out(path);
  f << "offset_hz,reflected_fraction\n";
  for (const auto& p : scan)
    f << format_double(p.offset_hz) << ','
      << format_double(p.reflected_fraction) << '\n';
}

std::vector<ReflectionScanPoint> load_scan_csv(const std::string& path) {
  CsvReader r(path);
  r.expect_header("offset_hz,reflected_fraction");
  std::vector<ReflectionScanPoint> out;
  std::vector<double> row;
  while (r.next_row(row, 2)) out.push_back({row[0], row[1]});
  return out;
}

void write_modes_csv(const std::string& path,
                     const std::vector<CavityMode>& modes) {
  auto f = open_out(path);
  f << "nu_res_hz,local_fsr_hz\n";
  for (const auto& m : modes)
    f << format_double(m.nu_res_hz) << ',' << format_double(m.local_fsr_hz)
      << '\n';
}

std::vector<CavityMode> load_modes_csv(const std::string& path) {
  CsvReader r(path);
  r.expect_header("nu_res_hz,local_fsr_hz");
  std::vector<CavityMode> out;
  std::vector<double> row;
  while (r.next_row(row, 2)) out.push_back({row[0], row[1], 0.0});
  return out;
}

void write_trace_csv(const std::string& path, const TimeTrace& x) {
  auto f = open_out(path);
  f << "t_s,re,im\n";
  for (std::size_t k = 0; k < x.samples.size(); ++k)
    f << format_double(x.grid.t(k)) << ',' << format_double(x.samples[k].real())
      << ',' << format_double(x.samples[k].imag()) << '\n';
}

TimeTrace load_trace_csv(const std::string& path) {
  CsvReader r(path);
  r.expect_header("t_s,re,im");
  std::vector<double> t;
  std::vector<std::complex<double>> s;
  std::vector<double> row;
  while (r.next_row(row, 3)) {
    t.push_back(row[0]);
    s.emplace_back(row[1], row[2]);
  }
  check_uniform(t, path);
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  TimeTrace x;
  x.grid = make_time_grid(dt, t.size(), t.front());
  x.samples = std::move(s);
  return x;
}

void write_spectrum_trace_csv(const std::string& path, const SpectrumTrace& X) {
  auto f = open_out(path);
  f << "nu_hz,re,im\n";
  for (std::size_t k = 0; k < X.samples.size(); ++k)
    f << format_double(X.grid.nu(k)) << ','
      << format_double(X.samples[k].real()) << ','
      << format_double(X.samples[k].imag()) << '\n';
}

SpectrumTrace load_spectrum_trace_csv(const std::string& path) {
  CsvReader r(path);
  r.expect_header("nu_hz,re,im");
  std::vector<double> nu;
  std::vector<std::complex<double>> s;
  std::vector<double> row;
  while (r.next_row(row, 3)) {
    nu.push_back(row[0]);
    s.emplace_back(row[1], row[2]);
  }
  check_uniform(nu, path);
  const auto n = nu.size();
  const double dnu = (nu.back() - nu.front()) / static_cast<double>(n - 1);
  SpectrumTrace X;
  X.grid = make_grid(nu.front() + 0.5 * dnu * static_cast<double>(n),
                     dnu * static_cast<double>(n), n);
  X.samples = std::move(s);
  return X;
}

void write_intensity_csv(const std::string& path, const IntensityTrace& x) {
  if (x.intensity.size() != x.grid.n_samples)
    throw std::invalid_argument("write_intensity_csv: length mismatch");
  auto f = open_out(path);
  f << "t_s,intensity\n";
  for (std::size_t k = 0; k < x.intensity.size(); ++k)
    f << format_double(x.grid.t(k)) << ',' << format_double(x.intensity[k])
      << '\n';
}

IntensityTrace load_intensity_csv(const std::string& path) {
  CsvReader r(path);
  r.expect_header("t_s,intensity");
  std::vector<double> t, p;
  std::vector<double> row;
  while (r.next_row(row, 2)) {
    t.push_back(row[0]);
    p.push_back(row[1]);
  }
  check_uniform(t, path);
  const double dt = (t.back() - t.front()) / static_cast<double>(t.size() - 1);
  IntensityTrace x;
  x.grid = make_time_grid(dt, t.size(), t.front());
  x.intensity = std::move(p);
  return x;
}

void write_ensemble_csv(const std::string& path, const IonClassEnsemble& ens) {
  auto f = open_out(path);
  f << "detuning_hz,pop_g1,pop_g2,pop_g3\n";
  for (std::size_t k = 0; k < ens.n_classes(); ++k)
    f << format_double(ens.detuning_hz[k]) << ','
      << format_double(ens.ground[0][k]) << ','
      << format_double(ens.ground[1][k]) << ','
      << format_double(ens.ground[2][k]) << '\n';
}

GroundPopulationTable load_ensemble_csv(const std::string& path) {
  CsvReader r(path);
  r.expect_header("detuning_hz,pop_g1,pop_g2,pop_g3");
  GroundPopulationTable t;
  std::vector<double> row;
  while (r.next_row(row, 4)) {
    t.detuning_hz.push_back(row[0]);
    t.ground[0].push_back(row[1]);
    t.ground[1].push_back(row[2]);
    t.ground[2].push_back(row[3]);
  }
  return t;
}

std::string metrics_to_json(const EchoMetrics& m) {
  nlohmann::ordered_json j;
  j["t_echo_s"] = m.t_echo_s;
  j["efficiency"] = m.efficiency;
  j["window"] = {{"start_s", m.window_start_s}, {"end_s", m.window_end_s}};
  j["echo_peak_time_s"] = m.echo_peak_time_s;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& se : m.secondary_echoes) {
    nlohmann::ordered_json e;
    e["order"] = se.order;
    e["t_s"] = se.t_s;
    e["efficiency"] = se.efficiency;
    arr.push_back(e);
  }
  j["secondary_echoes"] = arr;
  return j.dump(2);
}

}  // namespace afc::io
