#include "passopt/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "passopt/dc_profile.hpp"
#include "passopt/rng.hpp"

namespace passopt {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    fields.push_back(cur);
    return fields;
}

[[noreturn]] void fail_at(std::size_t line_no, const std::string& message) {
    throw std::runtime_error("line " + std::to_string(line_no) + ": " + message);
}

long long parse_ll(const std::string& s, std::size_t line_no, const char* field) {
    if (s.empty()) fail_at(line_no, std::string(field) + " is empty");
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(s, &pos);
    } catch (const std::exception&) {
        fail_at(line_no, std::string(field) + " is not an integer: '" + s + "'");
    }
    if (pos != s.size()) fail_at(line_no, std::string(field) + " is not an integer: '" + s + "'");
    return v;
}

int parse_int(const std::string& s, std::size_t line_no, const char* field) {
    const long long v = parse_ll(s, line_no, field);
    if (v < -2000000000LL || v > 2000000000LL) fail_at(line_no, std::string(field) + " out of range");
    return static_cast<int>(v);
}

bool parse_bool(const std::string& s, std::size_t line_no, const char* field) {
    if (s == "0") return false;
    if (s == "1") return true;
    fail_at(line_no, std::string(field) + " must be 0 or 1, got '" + s + "'");
}

// "3", "3.7" -> integer tenths; anything else is malformed
int parse_tenths(const std::string& s, std::size_t line_no, const char* field) {
    if (s.empty()) fail_at(line_no, std::string(field) + " is empty");
    std::size_t dot = s.find('.');
    std::string whole = dot == std::string::npos ? s : s.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : s.substr(dot + 1);
    if (whole.empty() || frac.size() > 1)
        fail_at(line_no, std::string(field) + " must carry at most one decimal digit: '" + s + "'");
    for (char c : whole)
        if (c < '0' || c > '9') fail_at(line_no, std::string(field) + " is malformed: '" + s + "'");
    for (char c : frac)
        if (c < '0' || c > '9') fail_at(line_no, std::string(field) + " is malformed: '" + s + "'");
    long long v = 0;
    for (char c : whole) v = v * 10 + (c - '0');
    v *= 10;
    if (!frac.empty()) v += frac[0] - '0';
    if (v < 0 || v > 50) fail_at(line_no, std::string(field) + " outside [0, 5]: '" + s + "'");
    return static_cast<int>(v);
}

std::string format_tenths(int tenths) {
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

void append_record(std::string& out, const EnrollmentRecord& r) {
    out += r.student_id;
    out += ',';
    out += r.course;
    out += ',';
    out += std::to_string(r.year);
    out += ',';
    out += std::to_string(r.semester);
    out += ',';
    out += format_tenths(r.grade_tenths);
    out += ',';
    out += format_tenths(r.gpa_tenths);
    out += ',';
    out += r.pass ? '1' : '0';
    out += ',';
    out += std::to_string(r.age);
    out += ',';
    out += std::to_string(r.academic_age);
    out += ',';
    out += std::to_string(r.gender);
    out += ',';
    out += std::to_string(r.attempts);
    out += ',';
    out += std::to_string(r.cancellations);
    out += ',';
    out += r.cancelled ? '1' : '0';
    out += ',';
    out += std::to_string(r.section);
    out += ',';
    out += std::to_string(r.section_capacity);
    out += ',';
    out += std::to_string(r.enrolled_count);
    out += ',';
    out += r.instructor_id;
    out += ',';
    out += r.tenured ? '1' : '0';
    out += '\n';
}

}  // namespace

DatasetHandle load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path.string());

    std::string line;
    std::size_t line_no = 0;
    DatasetHandle data;
    data.provenance = Provenance::File;

    if (!std::getline(in, line)) throw std::runtime_error("dataset file is empty: " + path.string());
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kCsvHeader) fail_at(line_no, "header does not match the enrollment schema");

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto f = split_fields(line);
        if (f.size() != 18)
            fail_at(line_no, "expected 18 fields, got " + std::to_string(f.size()));

        EnrollmentRecord r;
        r.student_id = f[0];
        r.course = f[1];
        r.year = parse_int(f[2], line_no, "year");
        r.semester = parse_int(f[3], line_no, "semester");
        r.grade_tenths = parse_tenths(f[4], line_no, "grade");
        r.gpa_tenths = parse_tenths(f[5], line_no, "gpa");
        r.pass = parse_bool(f[6], line_no, "pass");
        r.age = parse_int(f[7], line_no, "age");
        r.academic_age = parse_int(f[8], line_no, "academic_age");
        r.gender = parse_int(f[9], line_no, "gender");
        r.attempts = parse_int(f[10], line_no, "attempts");
        r.cancellations = parse_int(f[11], line_no, "cancellations");
        r.cancelled = parse_bool(f[12], line_no, "cancelled");
        r.section = parse_int(f[13], line_no, "section");
        r.section_capacity = parse_int(f[14], line_no, "section_capacity");
        r.enrolled_count = parse_int(f[15], line_no, "enrolled_count");
        r.instructor_id = f[16];
        r.tenured = parse_bool(f[17], line_no, "tenured");
        try {
            r.validate();
        } catch (const std::exception& e) {
            fail_at(line_no, e.what());
        }
        data.records.push_back(std::move(r));
    }
    return data;
}

std::string dataset_to_csv(const DatasetHandle& data) {
    std::string out(kCsvHeader);
    out += '\n';
    for (const auto& r : data.records) append_record(out, r);
    return out;
}

void write_dataset(const DatasetHandle& data, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file: " + path.string());
    out << dataset_to_csv(data);
    if (!out) throw std::runtime_error("failed writing dataset: " + path.string());
}

DatasetHandle filter(const DatasetHandle& data, const std::string& course,
                     std::optional<int> year, std::optional<int> semester) {
    DatasetHandle out;
    out.provenance = data.provenance;
    for (const auto& r : data.records) {
        if (r.course != course) continue;
        if (year && r.year != *year) continue;
        if (semester && r.semester != *semester) continue;
        out.records.push_back(r);
    }
    return out;
}

void SyntheticConfig::validate() const {
    if (courses.empty()) throw std::invalid_argument("synthetic config: no courses");
    for (const auto& c : courses)
        if (!is_valid_course_code(c))
            throw std::invalid_argument("synthetic config: unknown course code '" + c + "'");
    if (terms.empty()) throw std::invalid_argument("synthetic config: no terms");
    for (auto [y, s] : terms)
        if (s != 1 && s != 2) throw std::invalid_argument("synthetic config: semester must be 1 or 2");
    if (enrollment_min < 1 || enrollment_max < enrollment_min)
        throw std::invalid_argument("synthetic config: bad enrollment range");
    if (tenured_pool < 0 || adjunct_pool < 0 || tenured_pool + adjunct_pool < 1)
        throw std::invalid_argument("synthetic config: empty instructor pools");
    double total = 0.0;
    for (double f : gpa_distribution) {
        if (f < 0.0) throw std::invalid_argument("synthetic config: negative GPA frequency");
        total += f;
    }
    if (total <= 0.0) throw std::invalid_argument("synthetic config: GPA distribution sums to zero");
    if (grade_model.noise_sd < 0.0) throw std::invalid_argument("synthetic config: negative noise");
    if (instructor_offset_range < 0.0)
        throw std::invalid_argument("synthetic config: negative offset range");
    if (tenured_share < 0.0 || tenured_share > 1.0)
        throw std::invalid_argument("synthetic config: tenured share outside [0, 1]");
    if (target_section_size < 1)
        throw std::invalid_argument("synthetic config: section size must be positive");
    if (cancel_rate < 0.0 || cancel_rate >= 1.0)
        throw std::invalid_argument("synthetic config: cancel rate outside [0, 1)");
}

SyntheticConfig SyntheticConfig::defaults() {
    SyntheticConfig cfg;
    for (int year = 2010; year <= 2017; ++year) {
        cfg.terms.emplace_back(year, 1);
        if (year < 2017) cfg.terms.emplace_back(year, 2);
    }
    // GPA distribution centered on the calibrated per-value frequency ranges
    double total = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        cfg.gpa_distribution[i] = 0.5 * (dc::kGpaFreqLower[i] + dc::kGpaFreqUpper[i]);
        total += cfg.gpa_distribution[i];
    }
    for (double& f : cfg.gpa_distribution) f /= total;
    return cfg;
}

SyntheticConfig synthetic_config_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    SyntheticConfig cfg = SyntheticConfig::defaults();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("courses")) cfg.courses = j.at("courses").get<std::vector<std::string>>();
    if (j.contains("terms")) {
        cfg.terms.clear();
        for (const auto& t : j.at("terms"))
            cfg.terms.emplace_back(t.at(0).get<int>(), t.at(1).get<int>());
    }
    if (j.contains("enrollment_min")) cfg.enrollment_min = j.at("enrollment_min").get<long long>();
    if (j.contains("enrollment_max")) cfg.enrollment_max = j.at("enrollment_max").get<long long>();
    if (j.contains("tenured_pool")) cfg.tenured_pool = j.at("tenured_pool").get<int>();
    if (j.contains("adjunct_pool")) cfg.adjunct_pool = j.at("adjunct_pool").get<int>();
    if (j.contains("gpa_distribution")) {
        const auto v = j.at("gpa_distribution").get<std::vector<double>>();
        if (v.size() != 50)
            throw std::invalid_argument("synthetic config: gpa_distribution needs 50 entries");
        std::copy(v.begin(), v.end(), cfg.gpa_distribution.begin());
    }
    if (j.contains("grade_model")) {
        const auto& g = j.at("grade_model");
        if (g.contains("slope")) cfg.grade_model.slope = g.at("slope").get<double>();
        if (g.contains("intercept")) cfg.grade_model.intercept = g.at("intercept").get<double>();
        if (g.contains("noise_sd")) cfg.grade_model.noise_sd = g.at("noise_sd").get<double>();
    }
    if (j.contains("instructor_offset_range"))
        cfg.instructor_offset_range = j.at("instructor_offset_range").get<double>();
    if (j.contains("tenured_share")) cfg.tenured_share = j.at("tenured_share").get<double>();
    if (j.contains("target_section_size"))
        cfg.target_section_size = j.at("target_section_size").get<int>();
    if (j.contains("cancel_rate")) cfg.cancel_rate = j.at("cancel_rate").get<double>();
    cfg.validate();
    return cfg;
}

std::string synthetic_config_to_json(const SyntheticConfig& cfg) {
    nlohmann::json j;
    j["seed"] = cfg.seed;
    j["courses"] = cfg.courses;
    j["terms"] = nlohmann::json::array();
    for (auto [y, s] : cfg.terms) j["terms"].push_back({y, s});
    j["enrollment_min"] = cfg.enrollment_min;
    j["enrollment_max"] = cfg.enrollment_max;
    j["tenured_pool"] = cfg.tenured_pool;
    j["adjunct_pool"] = cfg.adjunct_pool;
    j["gpa_distribution"] = cfg.gpa_distribution;
    j["grade_model"] = {{"slope", cfg.grade_model.slope},
                        {"intercept", cfg.grade_model.intercept},
                        {"noise_sd", cfg.grade_model.noise_sd}};
    j["instructor_offset_range"] = cfg.instructor_offset_range;
    j["tenured_share"] = cfg.tenured_share;
    j["target_section_size"] = cfg.target_section_size;
    j["cancel_rate"] = cfg.cancel_rate;
    return j.dump(2) + "\n";
}

namespace {

struct SyntheticInstructor {
    std::string id;
    bool tenured = false;
    double offset = 0.0;
};

std::string pad_number(int value, int width) {
    std::string s = std::to_string(value);
    while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
    return s;
}

}  // namespace

DatasetHandle generate_synthetic(const SyntheticConfig& cfg) {
    cfg.validate();
    Rng root(cfg.seed);

    // one shared staff pool; offsets are the planted instructor skill signal
    Rng pool_rng = root.stream(1);
    std::vector<SyntheticInstructor> tenured_pool, adjunct_pool;
    for (int i = 0; i < cfg.tenured_pool; ++i) {
        const double off = pool_rng.uniform_real(-cfg.instructor_offset_range,
                                                 cfg.instructor_offset_range);
        tenured_pool.push_back({"T" + pad_number(i + 1, 3), true, off});
    }
    for (int i = 0; i < cfg.adjunct_pool; ++i) {
        const double off = pool_rng.uniform_real(-cfg.instructor_offset_range,
                                                 cfg.instructor_offset_range);
        adjunct_pool.push_back({"A" + pad_number(i + 1, 3), false, off});
    }

    // cumulative GPA grid distribution
    std::array<double, 50> cdf{};
    double total = 0.0;
    for (std::size_t i = 0; i < 50; ++i) {
        total += cfg.gpa_distribution[i];
        cdf[i] = total;
    }
    for (double& c : cdf) c /= total;

    DatasetHandle out;
    out.provenance = Provenance::Synthetic;

    for (std::size_t ci = 0; ci < cfg.courses.size(); ++ci) {
        const std::string& course = cfg.courses[ci];
        for (std::size_t ti = 0; ti < cfg.terms.size(); ++ti) {
            const auto [year, semester] = cfg.terms[ti];
            Rng rng = root.stream((ci + 2) * 100000 + ti + 10);

            const long long ne = rng.uniform_int(cfg.enrollment_min, cfg.enrollment_max);
            const int sections = std::max<int>(
                1, static_cast<int>(std::llround(static_cast<double>(ne) /
                                                 cfg.target_section_size)));
            std::vector<int> capacity(static_cast<std::size_t>(sections),
                                      static_cast<int>(ne / sections));
            for (long long r = 0; r < ne % sections; ++r) ++capacity[static_cast<std::size_t>(r)];

            // staff the term: tenured share first, adjuncts fill the rest
            int nt = static_cast<int>(std::llround(sections * cfg.tenured_share));
            nt = std::min({nt, sections, static_cast<int>(tenured_pool.size())});
            int na = sections - nt;
            if (na > static_cast<int>(adjunct_pool.size())) {
                na = static_cast<int>(adjunct_pool.size());
                nt = std::min(sections - na, static_cast<int>(tenured_pool.size()));
                if (nt + na < sections)
                    throw std::runtime_error("synthetic: instructor pools cannot staff a term");
            }
            auto staff = rng.sample(tenured_pool, static_cast<std::size_t>(nt));
            const auto adjuncts = rng.sample(adjunct_pool, static_cast<std::size_t>(na));
            staff.insert(staff.end(), adjuncts.begin(), adjuncts.end());
            rng.shuffle(staff);

            // GPA draws, then a uniformly shuffled seating order
            std::vector<int> gpa_tenths(static_cast<std::size_t>(ne));
            for (auto& g : gpa_tenths) {
                const double u = rng.uniform_real(0.0, 1.0);
                const auto it = std::lower_bound(cdf.begin(), cdf.end(), u);
                g = static_cast<int>(it - cdf.begin()) + 1;  // grid 0.1 .. 5.0
                if (g > 50) g = 50;
            }
            std::vector<int> seat;
            seat.reserve(static_cast<std::size_t>(ne));
            for (int j = 0; j < sections; ++j)
                seat.insert(seat.end(), static_cast<std::size_t>(capacity[static_cast<std::size_t>(j)]),
                            j);
            rng.shuffle(seat);

            for (long long n = 0; n < ne; ++n) {
                const int j = seat[static_cast<std::size_t>(n)];
                const auto& instr = staff[static_cast<std::size_t>(j)];
                EnrollmentRecord r;
                r.student_id = course + "-" + std::to_string(year) + std::to_string(semester) +
                               "-" + pad_number(static_cast<int>(n) + 1, 5);
                r.course = course;
                r.year = year;
                r.semester = semester;
                r.gpa_tenths = gpa_tenths[static_cast<std::size_t>(n)];
                r.cancelled = rng.uniform_real(0.0, 1.0) < cfg.cancel_rate;
                if (r.cancelled) {
                    r.grade_tenths = 0;
                } else {
                    const double raw = cfg.grade_model.intercept +
                                       cfg.grade_model.slope * (r.gpa_tenths / 10.0) +
                                       instr.offset +
                                       rng.normal(0.0, cfg.grade_model.noise_sd);
                    r.grade_tenths = static_cast<int>(
                        std::clamp<long long>(std::llround(raw * 10.0), 0, 50));
                }
                r.pass = r.grade_tenths >= 30;
                r.academic_age = static_cast<int>(rng.uniform_int(1, 6));
                r.age = 16 + r.academic_age + static_cast<int>(rng.uniform_int(0, 3));
                r.gender = static_cast<int>(rng.uniform_int(0, 1));
                r.attempts = 1 + static_cast<int>(
                                     rng.uniform_real(0.0, 1.0) < 0.25 ? rng.uniform_int(1, 2) : 0);
                r.cancellations = static_cast<int>(rng.uniform_int(0, 2) == 0 ? 1 : 0);
                r.section = j + 1;
                r.section_capacity = capacity[static_cast<std::size_t>(j)];
                r.enrolled_count = capacity[static_cast<std::size_t>(j)];
                r.instructor_id = instr.id;
                r.tenured = instr.tenured;
                out.records.push_back(std::move(r));
            }
        }
    }
    return out;
}

std::vector<std::pair<int, int>> list_terms(const DatasetHandle& data, const std::string& course) {
    std::set<std::pair<int, int>> terms;
    for (const auto& r : data.records)
        if (r.course == course) terms.insert({r.year, r.semester});
    return {terms.begin(), terms.end()};
}

InstructorPools instructor_pools(const DatasetHandle& data, const std::string& course) {
    std::map<std::string, bool> seen;
    for (const auto& r : data.records) {
        if (r.course != course) continue;
        const auto it = seen.find(r.instructor_id);
        if (it == seen.end()) {
            seen.emplace(r.instructor_id, r.tenured);
        } else if (it->second != r.tenured) {
            throw std::runtime_error("instructor '" + r.instructor_id +
                                     "' appears with inconsistent tenure flags");
        }
    }
    InstructorPools pools;
    for (const auto& [id, tenured] : seen)
        (tenured ? pools.tenured : pools.adjunct).push_back(id);
    return pools;
}

std::vector<double> completed_gpas(const DatasetHandle& data) {
    std::vector<double> out;
    out.reserve(data.records.size());
    for (const auto& r : data.records)
        if (!r.cancelled) out.push_back(r.gpa());
    return out;
}

std::uint64_t dataset_fingerprint(const DatasetHandle& data) {
    const std::string body = dataset_to_csv(data);
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a
    for (unsigned char c : body) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace passopt
