#include "zetakit/json_io.hpp"

#include "zetakit/errors.hpp"

#include <fstream>
#include <sstream>

namespace zetakit::io {

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadFileError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw BadFileError("'" + path + "' is not valid JSON: " + e.what());
    }
}

void save_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw BadFileError("cannot write '" + path + "'");
    out << j.dump(2) << "\n";
}

namespace {

const Json& field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw BadFileError(std::string("missing field '") + key + "'");
    return *it;
}

std::vector<std::string> string_list(const Json& j) {
    std::vector<std::string> out;
    for (const auto& s : j) out.push_back(s.get<std::string>());
    return out;
}

}  // namespace

varieties::StratifiedVariety variety_from_json(const Json& j) {
    varieties::StratifiedVariety v;
    v.name = field(j, "name").get<std::string>();
    for (const auto& sj : field(j, "strata")) {
        varieties::Stratum s;
        s.id = field(sj, "id").get<std::string>();
        s.vars = string_list(field(sj, "vars"));
        for (const auto& text : field(sj, "equations"))
            s.equations.push_back(varieties::IntPolynomial::parse(text.get<std::string>(), s.vars));
        if (sj.contains("inequations"))
            for (const auto& text : sj["inequations"])
                s.inequations.push_back(
                    varieties::IntPolynomial::parse(text.get<std::string>(), s.vars));
        for (const auto& other : v.strata)
            if (other.id == s.id) throw BadFileError("duplicate stratum id '" + s.id + "'");
        v.strata.push_back(std::move(s));
    }
    const Json& cj = field(j, "claims");
    v.claims.dim = field(cj, "dim").get<int>();
    v.claims.smooth = field(cj, "smooth").get<bool>();
    v.claims.proper = field(cj, "proper").get<bool>();
    if (j.contains("good_primes_hint") && !j["good_primes_hint"].is_null()) {
        std::vector<std::uint64_t> hint;
        for (const auto& p : j["good_primes_hint"]) hint.push_back(p.get<std::uint64_t>());
        v.good_primes_hint = std::move(hint);
    }
    return v;
}

Json variety_to_json(const varieties::StratifiedVariety& v) {
    Json j;
    j["name"] = v.name;
    j["strata"] = Json::array();
    for (const auto& s : v.strata) {
        Json sj;
        sj["id"] = s.id;
        sj["vars"] = s.vars;
        sj["equations"] = Json::array();
        for (const auto& f : s.equations) sj["equations"].push_back(f.to_string());
        sj["inequations"] = Json::array();
        for (const auto& f : s.inequations) sj["inequations"].push_back(f.to_string());
        j["strata"].push_back(std::move(sj));
    }
    j["claims"] = Json{{"dim", v.claims.dim}, {"smooth", v.claims.smooth}, {"proper", v.claims.proper}};
    if (v.good_primes_hint) j["good_primes_hint"] = *v.good_primes_hint;
    return j;
}

padic::ResolutionModel model_from_json(const Json& j) {
    padic::ResolutionModel m;
    m.name = field(j, "name").get<std::string>();
    m.n = field(j, "n").get<unsigned>();
    m.r = field(j, "r").get<unsigned>();
    if (m.r == 0) throw BadFileError("model index r must be positive");
    m.upstairs = variety_from_json(field(j, "upstairs"));
    for (const auto& dj : field(j, "divisors")) {
        padic::Divisor d;
        d.name = field(dj, "name").get<std::string>();
        d.e = field(dj, "e").get<long long>();
        for (const auto& [stratum_id, polys] : field(dj, "membership").items()) {
            const varieties::Stratum* s = nullptr;
            for (const auto& cand : m.upstairs.strata)
                if (cand.id == stratum_id) s = &cand;
            if (!s)
                throw BadFileError("divisor '" + d.name + "' references unknown stratum '" +
                                   stratum_id + "'");
            std::vector<varieties::IntPolynomial> parsed;
            for (const auto& text : polys)
                parsed.push_back(varieties::IntPolynomial::parse(text.get<std::string>(), s->vars));
            d.membership[stratum_id] = std::move(parsed);
        }
        for (const auto& other : m.divisors)
            if (other.name == d.name) throw BadFileError("duplicate divisor name '" + d.name + "'");
        m.divisors.push_back(std::move(d));
    }
    if (j.contains("notes")) m.notes = j["notes"].get<std::string>();
    return m;
}

Json model_to_json(const padic::ResolutionModel& m) {
    Json j;
    j["name"] = m.name;
    j["n"] = m.n;
    j["r"] = m.r;
    j["upstairs"] = variety_to_json(m.upstairs);
    j["divisors"] = Json::array();
    for (const auto& d : m.divisors) {
        Json dj;
        dj["name"] = d.name;
        dj["e"] = d.e;
        Json mem = Json::object();
        for (const auto& [stratum_id, polys] : d.membership) {
            Json list = Json::array();
            for (const auto& f : polys) list.push_back(f.to_string());
            mem[stratum_id] = std::move(list);
        }
        dj["membership"] = std::move(mem);
        j["divisors"].push_back(std::move(dj));
    }
    if (!m.notes.empty()) j["notes"] = m.notes;
    return j;
}

birational::DiscrepancyVector discrepancy_from_json(const Json& j) {
    birational::DiscrepancyVector d;
    d.r = field(j, "r").get<unsigned>();
    for (const auto& ej : field(j, "entries")) {
        std::string name = field(ej, "name").get<std::string>();
        for (const auto& [n, e] : d.entries)
            if (n == name) throw BadFileError("duplicate divisor name '" + name + "'");
        d.entries.emplace_back(std::move(name), field(ej, "e").get<long long>());
    }
    return d;
}

Json discrepancy_to_json(const birational::DiscrepancyVector& d) {
    Json j;
    j["r"] = d.r;
    j["entries"] = Json::array();
    for (const auto& [name, e] : d.entries) j["entries"].push_back(Json{{"name", name}, {"e", e}});
    return j;
}

birational::DiscrepancyVector discrepancy_from_any(const Json& j) {
    if (j.contains("entries")) return discrepancy_from_json(j);
    if (j.contains("divisors")) return padic::discrepancy_of(model_from_json(j));
    throw BadFileError("expected a discrepancy file or a resolution-model file");
}

Json extended_rational_to_json(const padic::ExtendedRational& v) {
    Json j;
    j["r"] = v.index();
    j["q"] = v.base().str();
    Json coeffs = Json::array();
    for (const auto& c : v.coefficients()) coeffs.push_back(rational_to_string(c));
    j["coeffs"] = std::move(coeffs);
    j["decimal"] = v.decimal_string(30);
    return j;
}

Json measure_to_json(const padic::MeasureResult& m) {
    Json j;
    j["finite"] = m.finite;
    if (m.finite) j["value"] = extended_rational_to_json(*m.value);
    return j;
}

Json count_sequence_to_json(const varieties::CountSequence& seq) {
    Json j;
    j["variety"] = seq.variety_name;
    j["p"] = seq.p;
    j["r"] = seq.r;
    Json counts = Json::array();
    for (const auto& [k, n] : seq.counts) counts.push_back(Json{{"k", k}, {"N", n.str()}});
    j["counts"] = std::move(counts);
    return j;
}

namespace {

std::string complex_decimal(double x) {
    std::ostringstream out;
    out.precision(17);
    out << x;
    return out.str();
}

}  // namespace

Json zeta_report(const varieties::CountSequence& seq, const zeta::LinearRecurrence& rec,
                 const zeta::ZetaFunction& z, const zeta::WeilDecomposition& w,
                 bool bad_prime_warning) {
    Json j;
    j["schema"] = "zeta-report/1";
    j["input"] = count_sequence_to_json(seq);
    if (bad_prime_warning) j["bad_prime_warning"] = true;

    Json rj;
    rj["length"] = rec.length();
    Json coeffs = Json::array();
    for (const auto& c : rec.coeffs) coeffs.push_back(rational_to_string(c));
    rj["coeffs"] = std::move(coeffs);
    Json charpoly = Json::array();
    for (const auto& c : rec.charpoly) charpoly.push_back(rational_to_string(c));
    rj["charpoly"] = std::move(charpoly);
    j["recurrence"] = std::move(rj);

    Json zj;
    Json factors = Json::array();
    for (const auto& f : z.factors) {
        factors.push_back(Json{{"root_re", complex_decimal(f.root.real())},
                               {"root_im", complex_decimal(f.root.imag())},
                               {"radius", complex_decimal(f.radius)},
                               {"exponent", f.exponent}});
    }
    zj["factors"] = std::move(factors);
    Json num = Json::array(), den = Json::array();
    for (const auto& c : z.numerator) num.push_back(c.str());
    for (const auto& c : z.denominator) den.push_back(c.str());
    zj["numerator"] = std::move(num);
    zj["denominator"] = std::move(den);
    j["zeta"] = std::move(zj);

    j["betti"] = w.betti;
    j["euler"] = w.euler;
    j["purity_ok"] = w.purity_ok;
    j["conditional_on_good_reduction"] = true;
    return j;
}

Json comparison_to_json(const zeta::ComparisonReport& report) {
    Json j;
    j["verdict"] = zeta::to_string(report.verdict);
    Json rows = Json::array();
    for (const auto& row : report.rows) {
        rows.push_back(Json{{"k", row.k},
                            {"a", row.a.str()},
                            {"b", row.b.str()},
                            {"diff", row.diff.str()}});
    }
    j["per_k"] = std::move(rows);
    return j;
}

}  // namespace zetakit::io
