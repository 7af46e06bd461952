#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cuspdet/degeneration.hpp"
#include "cuspdet/fuchsian.hpp"
#include "cuspdet/trace_terms.hpp"
#include "cuspdet/zeta.hpp"

namespace cuspdet::io {

using nlohmann::json;

// "# key: value" lines at the top of every CSV
using Provenance = std::vector<std::pair<std::string, std::string>>;

// %.17g
std::string format_double(double x);

json to_json(const fuchsian::SurfaceData& s);
fuchsian::SurfaceData surface_from_json(const json& j);

json to_json(const fuchsian::LengthSpectrum& s);
fuchsian::LengthSpectrum spectrum_from_json(const json& j);

json to_json(const trace::ScatteringModel& m);
trace::ScatteringModel scattering_model_from_json(const json& j);

json to_json(const zeta::ZetaResult& r);
zeta::ZetaResult zeta_result_from_json(const json& j);

json to_json(const degeneration::PinchSweepRow& r);
degeneration::PinchSweepRow sweep_row_from_json(const json& j);
json to_json(const std::vector<degeneration::PinchSweepRow>& rows);
std::vector<degeneration::PinchSweepRow> sweep_rows_from_json(const json& j);

// CSV length,mult,pinched. surface and cutoff travel in the provenance header.
void write_spectrum_csv(std::ostream& os, const fuchsian::LengthSpectrum& s, const Provenance& prov = {});
fuchsian::LengthSpectrum read_spectrum_csv(std::istream& is);

// CSV ell,wolpert_sum,wolpert_asymptotic,small_eig_logsum,log_det_estimate,baseline
void write_sweep_csv(std::ostream& os, const std::vector<degeneration::PinchSweepRow>& rows, const Provenance& prov = {});
std::vector<degeneration::PinchSweepRow> read_sweep_csv(std::istream& is);

// Generic numeric table with a header row.
void write_table_csv(std::ostream& os, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows, const Provenance& prov = {});

// Reads the "# key: value" lines of a CSV.
Provenance read_provenance(std::istream& is);

// File helpers; failures raise Errc::io, malformed JSON Errc::parse.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
json parse_json(const std::string& text);

}  // namespace cuspdet::io
