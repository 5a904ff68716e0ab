#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "rowmix/checked.hpp"
#include "rowmix/io.hpp"

namespace rowmix {

namespace {

std::string trim(const std::string& s) {
    const auto from = s.find_first_not_of(" \t\r");
    if (from == std::string::npos) return "";
    const auto to = s.find_last_not_of(" \t\r");
    return s.substr(from, to - from + 1);
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

struct Csv {
    std::vector<std::pair<std::string, std::string>> header;  // key=value pairs from '#' lines
    std::vector<std::vector<Rational>> rows;
};

Csv parse_csv(const std::string& text) {
    Csv out;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string line = trim(raw);
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream tokens(line.substr(1));
            std::string tok;
            while (tokens >> tok) {
                const auto eq = tok.find('=');
                if (eq != std::string::npos && eq > 0)
                    out.header.emplace_back(tok.substr(0, eq), tok.substr(eq + 1));
            }
            continue;
        }
        std::vector<Rational> cells;
        for (const std::string& part : split(line, ',')) {
            const std::string cell = trim(part);
            try {
                cells.push_back(parse_rational(cell));
            } catch (const std::invalid_argument&) {
                throw std::invalid_argument("line " + std::to_string(line_no) +
                                            ": cannot parse cell '" + cell + "'");
            }
        }
        if (!out.rows.empty() && cells.size() != out.rows.front().size())
            throw std::invalid_argument("line " + std::to_string(line_no) + ": expected " +
                                        std::to_string(out.rows.front().size()) +
                                        " cells, got " + std::to_string(cells.size()));
        out.rows.push_back(std::move(cells));
    }
    return out;
}

std::int64_t header_int(const Csv& csv, const std::string& key, std::int64_t fallback) {
    std::int64_t value = fallback;
    for (const auto& [k, v] : csv.header) {
        if (k != key) continue;
        Rational r;
        try {
            r = parse_rational(v);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("header field " + key + "='" + v + "' is not a number");
        }
        if (!r.is_integer()) throw std::invalid_argument("header field " + key + " must be an integer");
        value = r.num;
    }
    return value;
}

std::int64_t lcm64(std::int64_t a, std::int64_t b) {
    return checked_mul(a / std::gcd(a, b), b);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

nlohmann::ordered_json status_json(const Status& status) {
    nlohmann::ordered_json out;
    switch (status.kind) {
        case StatusKind::exact: out["kind"] = "exact"; break;
        case StatusKind::heuristic_lower_bound: out["kind"] = "heuristic_lower_bound"; break;
        case StatusKind::heuristic_upper_bound: out["kind"] = "heuristic_upper_bound"; break;
        case StatusKind::ratio_bound:
            out["kind"] = "ratio_bound";
            out["ratio"] = format_rational(status.ratio);
            break;
    }
    return out;
}

nlohmann::ordered_json parameters_json(const RunParameters& params) {
    nlohmann::ordered_json out;
    out["seed"] = params.seed ? nlohmann::ordered_json(*params.seed) : nullptr;
    out["restarts"] = params.restarts ? nlohmann::ordered_json(*params.restarts) : nullptr;
    out["epsilon"] = params.epsilon ? nlohmann::ordered_json(format_rational(*params.epsilon)) : nullptr;
    out["budget_steps"] =
        params.budget_steps ? nlohmann::ordered_json(*params.budget_steps) : nullptr;
    out["budget_states"] =
        params.budget_states ? nlohmann::ordered_json(*params.budget_states) : nullptr;
    return out;
}

const char* objective_name(Objective objective) {
    switch (objective) {
        case Objective::gamma: return "gamma";
        case Objective::beta: return "beta";
        case Objective::mixability: return "check";
    }
    throw std::invalid_argument("unknown objective");
}

nlohmann::ordered_json row_sums_json(const Matrix& A, const std::vector<std::int64_t>& sums) {
    auto out = nlohmann::ordered_json::array();
    for (std::int64_t s : sums) out.push_back(format_rational(row_value(A, s)));
    return out;
}

} // namespace

Matrix parse_instance(const std::string& text) {
    const Csv csv = parse_csv(text);
    if (csv.rows.empty()) throw std::invalid_argument("no data rows");
    const int m = static_cast<int>(csv.rows.size());
    const int d = static_cast<int>(csv.rows.front().size());

    const std::int64_t header_m = header_int(csv, "m", m);
    const std::int64_t header_d = header_int(csv, "d", d);
    if (header_m != m)
        throw std::invalid_argument("header says m=" + std::to_string(header_m) + " but the file has " +
                                    std::to_string(m) + " rows");
    if (header_d != d)
        throw std::invalid_argument("header says d=" + std::to_string(header_d) + " but the file has " +
                                    std::to_string(d) + " columns");
    const std::int64_t scale = header_int(csv, "scale", 1);
    if (scale < 1) throw std::invalid_argument("header scale must be a positive integer");

    std::int64_t denom = 1;
    std::vector<Rational> cells;
    cells.reserve(static_cast<std::size_t>(m) * d);
    for (const auto& row : csv.rows)
        for (const Rational& raw : row) {
            cells.push_back(raw / Rational(scale));
            denom = lcm64(denom, cells.back().den);
        }

    Matrix A(m, d);
    A.scale = denom;
    for (std::size_t k = 0; k < cells.size(); ++k)
        A.entries[k] = checked_mul(cells[k].num, denom / cells[k].den);
    return A;
}

std::string write_instance(const Matrix& A) {
    std::string out = "# m=" + std::to_string(A.m) + " d=" + std::to_string(A.d) +
                      " scale=" + std::to_string(A.scale) + "\n";
    for (int i = 0; i < A.m; ++i) {
        for (int j = 0; j < A.d; ++j) {
            if (j > 0) out.push_back(',');
            out += std::to_string(checked_sub(A.at(i, j), A.shift));
        }
        out.push_back('\n');
    }
    return out;
}

Matrix load_instance(const std::string& path) { return parse_instance(read_file(path)); }

void save_instance(const std::string& path, const Matrix& A) { write_file(path, write_instance(A)); }

std::vector<DiscreteMarginal> parse_marginals(const std::string& text) {
    const Csv csv = parse_csv(text);
    if (csv.rows.size() < 2) throw std::invalid_argument("needs grid rows 0..N with N >= 1");
    const int N = static_cast<int>(csv.rows.size()) - 1;
    const int d = static_cast<int>(csv.rows.front().size());

    const std::int64_t header_n = header_int(csv, "N", N);
    const std::int64_t header_d = header_int(csv, "d", d);
    if (header_n != N)
        throw std::invalid_argument("header says N=" + std::to_string(header_n) + " but the file has " +
                                    std::to_string(N + 1) + " grid rows");
    if (header_d != d)
        throw std::invalid_argument("header says d=" + std::to_string(header_d) + " but the file has " +
                                    std::to_string(d) + " columns");

    std::vector<DiscreteMarginal> out;
    for (int j = 0; j < d; ++j) {
        std::vector<Rational> column(N + 1);
        for (int r = 0; r <= N; ++r) column[r] = csv.rows[r][j];
        try {
            out.push_back(DiscreteMarginal::from_quantiles(std::move(column)));
        } catch (const std::invalid_argument& e) {
            throw std::invalid_argument("marginal column " + std::to_string(j) + ": " + e.what());
        }
    }
    return out;
}

std::string write_marginals(const std::vector<DiscreteMarginal>& marginals) {
    if (marginals.empty()) throw std::invalid_argument("no marginals");
    const int N = marginals.front().N;
    for (const DiscreteMarginal& marginal : marginals)
        if (marginal.N != N) throw std::invalid_argument("marginals use different grid sizes");

    std::string out = "# N=" + std::to_string(N) + " d=" + std::to_string(marginals.size()) + "\n";
    for (int r = 0; r <= N; ++r) {
        for (std::size_t j = 0; j < marginals.size(); ++j) {
            if (j > 0) out.push_back(',');
            out += format_rational(marginals[j].quantiles[r]);
        }
        out.push_back('\n');
    }
    return out;
}

std::vector<DiscreteMarginal> load_marginals(const std::string& path) {
    return parse_marginals(read_file(path));
}

Rational row_value(const Matrix& A, std::int64_t stored_row_sum) {
    const std::int64_t shift_total = checked_mul(static_cast<std::int64_t>(A.d), A.shift);
    return Rational(checked_sub(stored_row_sum, shift_total), A.scale);
}

nlohmann::ordered_json result_document(const Matrix& A, const MixResult& result,
                                       const std::string& solver, const RunParameters& params,
                                       double timing_ms) {
    nlohmann::ordered_json doc;
    doc["objective"] = objective_name(result.objective);
    doc["value"] = format_rational(row_value(A, result.value));
    doc["status"] = status_json(result.status);
    doc["profile"] = result.profile.perms;
    doc["row_sums"] = row_sums_json(A, result.row_sums);
    doc["solver"] = solver;
    doc["parameters"] = parameters_json(params);
    doc["note"] = result.note;
    doc["timing_ms"] = timing_ms;
    return doc;
}

nlohmann::ordered_json check_document(const Matrix& A, bool mixable,
                                      const std::optional<MixResult>& witness,
                                      const std::string& solver, const RunParameters& params,
                                      double timing_ms) {
    nlohmann::ordered_json doc;
    doc["objective"] = "check";
    doc["mixable"] = mixable;
    std::string note;
    if (witness) {
        doc["value"] = format_rational(row_value(A, witness->value));
        doc["status"] = status_json(witness->status);
        doc["profile"] = witness->profile.perms;
        doc["row_sums"] = row_sums_json(A, witness->row_sums);
        note = witness->note;
    } else {
        const std::int64_t md = checked_mul(static_cast<std::int64_t>(A.m),
                                            static_cast<std::int64_t>(A.d));
        const std::int64_t numer = checked_sub(grand_total(A), checked_mul(md, A.shift));
        doc["value"] = format_rational(Rational(numer, checked_mul(static_cast<std::int64_t>(A.m), A.scale)));
        doc["status"] = status_json(Status::exact());
        doc["profile"] = nullptr;
        doc["row_sums"] = nullptr;
        note = "the row count does not divide the grand total";
    }
    doc["solver"] = solver;
    doc["parameters"] = parameters_json(params);
    doc["note"] = note;
    doc["timing_ms"] = timing_ms;
    return doc;
}

nlohmann::ordered_json var_bounds_document(const VarBoundReport& report,
                                           const RunParameters& params, double timing_ms) {
    nlohmann::ordered_json doc;
    doc["objective"] = "var_bounds";
    doc["alpha"] = format_rational(report.alpha);
    doc["lower"] = format_rational(report.lower);
    doc["upper"] = format_rational(report.upper);
    doc["lower_status"] = status_json(report.lower_status);
    doc["upper_status"] = status_json(report.upper_status);
    doc["solver"] = report.solver;
    doc["parameters"] = parameters_json(params);
    doc["note"] = report.note;
    doc["timing_ms"] = timing_ms;
    return doc;
}

std::string render_document(const nlohmann::ordered_json& doc) { return doc.dump(2) + "\n"; }

nlohmann::ordered_json strip_timing(nlohmann::ordered_json doc) {
    doc.erase("timing_ms");
    return doc;
}

} // namespace rowmix
