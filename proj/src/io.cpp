#include "cuspdet/io.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "cuspdet/error.hpp"

namespace cuspdet::io {

namespace {

template <class T>
T get(const json& j, const char* key)
{
    if (!j.is_object() || !j.contains(key)) throw Error(Errc::parse, std::string("missing field \"") + key + "\"");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(Errc::parse, std::string("field \"") + key + "\": " + e.what());
    }
}

void write_provenance(std::ostream& os, const Provenance& prov)
{
    for (const auto& [k, v] : prov) os << "# " << k << ": " << v << '\n';
}

std::vector<std::string> split(const std::string& line, char sep)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    if (!line.empty() && line.back() == sep) out.emplace_back();
    return out;
}

double to_double(const std::string& s)
{
    std::size_t pos = 0;
    double v;
    try {
        v = std::stod(s, &pos);
    } catch (const std::exception&) {
        throw Error(Errc::parse, "not a number: '" + s + "'");
    }
    if (pos != s.size()) throw Error(Errc::parse, "trailing characters in number: '" + s + "'");
    return v;
}

int to_int(const std::string& s)
{
    const double v = to_double(s);
    if (v != double(int(v))) throw Error(Errc::parse, "not an integer: '" + s + "'");
    return int(v);
}

// Skips comment lines, checks the header, returns the data rows split on commas.
std::vector<std::vector<std::string>> read_csv_body(std::istream& is, const std::string& header)
{
    std::string line;
    bool seen_header = false;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!seen_header) {
            if (line != header) throw Error(Errc::parse, "unexpected CSV header '" + line + "', wanted '" + header + "'");
            seen_header = true;
            continue;
        }
        rows.push_back(split(line, ','));
    }
    if (!seen_header) throw Error(Errc::parse, "CSV header missing");
    return rows;
}

std::map<std::string, std::string> as_map(const Provenance& p)
{
    return {p.begin(), p.end()};
}

}  // namespace

std::string format_double(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json to_json(const fuchsian::SurfaceData& s)
{
    return {{"genus", s.genus}, {"cusps", s.cusps}, {"components", s.components}};
}

fuchsian::SurfaceData surface_from_json(const json& j)
{
    fuchsian::SurfaceData s;
    s.genus = get<int>(j, "genus");
    s.cusps = get<int>(j, "cusps");
    s.components = get<int>(j, "components");
    s.validate();
    return s;
}

json to_json(const fuchsian::LengthSpectrum& s)
{
    json entries = json::array();
    for (const auto& e : s.entries) entries.push_back({{"length", e.length}, {"mult", e.mult}, {"pinched", e.pinched}});
    return {{"surface", to_json(s.surface)},
            {"cutoff", s.cutoff},
            {"word_radius", s.word_radius},
            {"radius_limited", s.radius_limited},
            {"entries", entries}};
}

fuchsian::LengthSpectrum spectrum_from_json(const json& j)
{
    fuchsian::LengthSpectrum s;
    s.surface = surface_from_json(get<json>(j, "surface"));
    s.cutoff = get<double>(j, "cutoff");
    if (j.contains("word_radius")) s.word_radius = get<int>(j, "word_radius");
    if (j.contains("radius_limited")) s.radius_limited = get<bool>(j, "radius_limited");
    const json entries = get<json>(j, "entries");
    if (!entries.is_array()) throw Error(Errc::parse, "\"entries\" must be an array");
    for (const auto& e : entries)
        s.entries.push_back({get<double>(e, "length"), get<int>(e, "mult"), e.contains("pinched") && get<bool>(e, "pinched")});
    s.validate();
    return s;
}

json to_json(const trace::ScatteringModel& m)
{
    json res = json::array();
    for (const auto& r : m.resonances) res.push_back({{"re", r.rho.real()}, {"im", r.rho.imag()}, {"order", r.order}});
    return {{"q", m.q}, {"phi_half", m.phi_half}, {"trace_c_half", m.trace_c_half}, {"resonances", res}};
}

trace::ScatteringModel scattering_model_from_json(const json& j)
{
    trace::ScatteringModel m;
    m.q = get<double>(j, "q");
    m.phi_half = get<double>(j, "phi_half");
    m.trace_c_half = get<double>(j, "trace_c_half");
    const json res = get<json>(j, "resonances");
    if (!res.is_array()) throw Error(Errc::parse, "\"resonances\" must be an array");
    for (const auto& r : res)
        m.resonances.push_back({{get<double>(r, "re"), get<double>(r, "im")}, r.contains("order") ? get<int>(r, "order") : 1});
    m.validate();
    return m;
}

json to_json(const zeta::ZetaResult& r)
{
    return {{"zeta_prime_zero", r.zeta_prime_zero},
            {"determinant", r.determinant},
            {"small_t_error", r.small_t_error},
            {"large_t_error", r.large_t_error}};
}

zeta::ZetaResult zeta_result_from_json(const json& j)
{
    zeta::ZetaResult r;
    r.zeta_prime_zero = get<double>(j, "zeta_prime_zero");
    r.determinant = get<double>(j, "determinant");
    r.small_t_error = get<double>(j, "small_t_error");
    r.large_t_error = get<double>(j, "large_t_error");
    r.validate();
    return r;
}

json to_json(const degeneration::PinchSweepRow& r)
{
    json j = {{"ell", r.ell},
              {"wolpert_sum", r.wolpert_sum},
              {"wolpert_asymptotic", r.wolpert_asymptotic},
              {"small_eig_logsum", r.small_eig_logsum},
              {"log_det_estimate", r.log_det_estimate},
              {"baseline", r.baseline}};
    if (r.rel_log_det_check) j["rel_log_det_check"] = *r.rel_log_det_check;
    return j;
}

degeneration::PinchSweepRow sweep_row_from_json(const json& j)
{
    degeneration::PinchSweepRow r;
    r.ell = get<double>(j, "ell");
    r.wolpert_sum = get<double>(j, "wolpert_sum");
    r.wolpert_asymptotic = get<double>(j, "wolpert_asymptotic");
    r.small_eig_logsum = get<double>(j, "small_eig_logsum");
    r.log_det_estimate = get<double>(j, "log_det_estimate");
    r.baseline = get<double>(j, "baseline");
    if (j.contains("rel_log_det_check")) r.rel_log_det_check = get<double>(j, "rel_log_det_check");
    r.validate();
    return r;
}

json to_json(const std::vector<degeneration::PinchSweepRow>& rows)
{
    json a = json::array();
    for (const auto& r : rows) a.push_back(to_json(r));
    return a;
}

std::vector<degeneration::PinchSweepRow> sweep_rows_from_json(const json& j)
{
    if (!j.is_array()) throw Error(Errc::parse, "sweep rows must be a JSON array");
    std::vector<degeneration::PinchSweepRow> rows;
    for (const auto& r : j) rows.push_back(sweep_row_from_json(r));
    return rows;
}

void write_spectrum_csv(std::ostream& os, const fuchsian::LengthSpectrum& s, const Provenance& prov)
{
    write_provenance(os, prov);
    os << "# genus: " << s.surface.genus << '\n'
       << "# cusps: " << s.surface.cusps << '\n'
       << "# components: " << s.surface.components << '\n'
       << "# cutoff: " << format_double(s.cutoff) << '\n'
       << "# word_radius: " << s.word_radius << '\n'
       << "# radius_limited: " << (s.radius_limited ? 1 : 0) << '\n';
    os << "length,mult,pinched\n";
    for (const auto& e : s.entries) os << format_double(e.length) << ',' << e.mult << ',' << (e.pinched ? 1 : 0) << '\n';
}

fuchsian::LengthSpectrum read_spectrum_csv(std::istream& is)
{
    std::stringstream buf;
    buf << is.rdbuf();
    std::istringstream head(buf.str());
    const auto meta = as_map(read_provenance(head));
    auto need = [&](const char* key) {
        auto it = meta.find(key);
        if (it == meta.end()) throw Error(Errc::parse, std::string("spectrum CSV lacks '# ") + key + "' header");
        return it->second;
    };
    fuchsian::LengthSpectrum s;
    s.surface.genus = to_int(need("genus"));
    s.surface.cusps = to_int(need("cusps"));
    s.surface.components = to_int(need("components"));
    s.cutoff = to_double(need("cutoff"));
    if (meta.count("word_radius")) s.word_radius = to_int(meta.at("word_radius"));
    if (meta.count("radius_limited")) s.radius_limited = to_int(meta.at("radius_limited")) != 0;
    std::istringstream body(buf.str());
    for (const auto& row : read_csv_body(body, "length,mult,pinched")) {
        if (row.size() != 3) throw Error(Errc::parse, "spectrum CSV row must have 3 fields");
        s.entries.push_back({to_double(row[0]), to_int(row[1]), to_int(row[2]) != 0});
    }
    s.surface.validate();
    s.validate();
    return s;
}

void write_sweep_csv(std::ostream& os, const std::vector<degeneration::PinchSweepRow>& rows, const Provenance& prov)
{
    write_provenance(os, prov);
    os << "ell,wolpert_sum,wolpert_asymptotic,small_eig_logsum,log_det_estimate,baseline\n";
    for (const auto& r : rows)
        os << format_double(r.ell) << ',' << format_double(r.wolpert_sum) << ',' << format_double(r.wolpert_asymptotic)
           << ',' << format_double(r.small_eig_logsum) << ',' << format_double(r.log_det_estimate) << ','
           << format_double(r.baseline) << '\n';
}

std::vector<degeneration::PinchSweepRow> read_sweep_csv(std::istream& is)
{
    std::vector<degeneration::PinchSweepRow> out;
    for (const auto& row :
         read_csv_body(is, "ell,wolpert_sum,wolpert_asymptotic,small_eig_logsum,log_det_estimate,baseline")) {
        if (row.size() != 6) throw Error(Errc::parse, "sweep CSV row must have 6 fields");
        degeneration::PinchSweepRow r;
        r.ell = to_double(row[0]);
        r.wolpert_sum = to_double(row[1]);
        r.wolpert_asymptotic = to_double(row[2]);
        r.small_eig_logsum = to_double(row[3]);
        r.log_det_estimate = to_double(row[4]);
        r.baseline = to_double(row[5]);
        r.validate();
        out.push_back(r);
    }
    return out;
}

void write_table_csv(std::ostream& os, const std::vector<std::string>& columns,
                     const std::vector<std::vector<double>>& rows, const Provenance& prov)
{
    write_provenance(os, prov);
    for (std::size_t i = 0; i < columns.size(); ++i) os << (i ? "," : "") << columns[i];
    os << '\n';
    for (const auto& r : rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << format_double(r[i]);
        os << '\n';
    }
}

Provenance read_provenance(std::istream& is)
{
    Provenance out;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] != '#') break;
        const auto colon = line.find(": ");
        if (line.size() < 2 || colon == std::string::npos) continue;
        out.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
    }
    return out;
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::io, "cannot open '" + path + "' for reading");
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(Errc::io, "cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) throw Error(Errc::io, "write to '" + path + "' failed");
}

json parse_json(const std::string& text)
{
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(Errc::parse, e.what());
    }
}

}  // namespace cuspdet::io
