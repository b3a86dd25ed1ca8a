#pragma once

#include <optional>
#include <string>
#include <vector>

#include "afc/cavity.hpp"
#include "afc/grid.hpp"
#include "afc/pulses.hpp"
#include "afc/pumping.hpp"
#include "afc/storage.hpp"

namespace afc::io {

// All writers print doubles in shortest round-trip form (std::to_chars) and
// are deterministic: same data -> same bytes.
std::string format_double(double v);

// --- spectra: nu_hz,d,delta_n,n_g (absent columns omitted) --- //
struct SpectrumTable {
  FrequencyGrid grid;
  std::optional<std::vector<double>> d;
  std::optional<std::vector<double>> delta_n;
  std::optional<std::vector<double>> n_g;
};

void write_spectrum_csv(const std::string& path, const SpectrumTable& table);
SpectrumTable load_spectrum_csv(const std::string& path);

// --- reflection scans: offset_hz,reflected_fraction --- //
void write_scan_csv(const std::string& path,
                    const std::vector<ReflectionScanPoint>& scan);
std::vector<ReflectionScanPoint> load_scan_csv(const std::string& path);

// --- cavity modes: nu_res_hz,local_fsr_hz --- //
void write_modes_csv(const std::string& path,
                     const std::vector<CavityMode>& modes);
std::vector<CavityMode> load_modes_csv(const std::string& path);

// --- complex traces: t_s,re,im  /  nu_hz,re,im --- //
void write_trace_csv(const std::string& path, const TimeTrace& x);
TimeTrace load_trace_csv(const std::string& path);
void write_spectrum_trace_csv(const std::string& path, const SpectrumTrace& X);
SpectrumTrace load_spectrum_trace_csv(const std::string& path);

// --- intensity traces: t_s,intensity --- //
struct IntensityTrace {
  TimeGrid grid;
  std::vector<double> intensity;
};
void write_intensity_csv(const std::string& path, const IntensityTrace& x);
IntensityTrace load_intensity_csv(const std::string& path);

// --- ensembles: detuning_hz,pop_g1,pop_g2,pop_g3 --- //
struct GroundPopulationTable {
  std::vector<double> detuning_hz;
  std::array<std::vector<double>, 3> ground;
};
void write_ensemble_csv(const std::string& path, const IonClassEnsemble& ens);
GroundPopulationTable load_ensemble_csv(const std::string& path);

// Echo metrics as the documented JSON object.
std::string metrics_to_json(const EchoMetrics& m);

}  // namespace afc::io
