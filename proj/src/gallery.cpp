#include "zetakit/gallery.hpp"

#include "zetakit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

namespace zetakit::gallery {

namespace {

using birational::DiscrepancyVector;
using padic::ExtendedRational;
using padic::MeasureResult;
using padic::ResolutionModel;
using varieties::CountSequence;
using varieties::StratifiedVariety;

// ---------------------------------------------------------------------------
// Payload data, in the exact file formats the CLI accepts.

const char* kProjectiveSpace1 = R"({
  "name": "projective_space_1",
  "strata": [
    {"id": "cell_0", "vars": ["x1"], "equations": [], "inequations": []},
    {"id": "cell_1", "vars": [], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 1, "smooth": true, "proper": true}
})";

const char* kProjectiveSpace2 = R"({
  "name": "projective_space_2",
  "strata": [
    {"id": "cell_0", "vars": ["x1", "x2"], "equations": [], "inequations": []},
    {"id": "cell_1", "vars": ["x2"], "equations": [], "inequations": []},
    {"id": "cell_2", "vars": [], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 2, "smooth": true, "proper": true}
})";

const char* kProjectiveSpace3 = R"({
  "name": "projective_space_3",
  "strata": [
    {"id": "cell_0", "vars": ["x1", "x2", "x3"], "equations": [], "inequations": []},
    {"id": "cell_1", "vars": ["x2", "x3"], "equations": [], "inequations": []},
    {"id": "cell_2", "vars": ["x3"], "equations": [], "inequations": []},
    {"id": "cell_3", "vars": [], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 3, "smooth": true, "proper": true}
})";

// Plane cubic y^2 z = x^3 - x z^2, presented as the affine chart z = 1 plus
// the single point at infinity [0:1:0]. Smooth at every odd prime.
const char* kElliptic3 = R"({
  "name": "elliptic_3",
  "strata": [
    {"id": "affine", "vars": ["x", "y"], "equations": ["y^2 - x^3 + x"], "inequations": []},
    {"id": "infinity", "vars": [], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 1, "smooth": true, "proper": true},
  "good_primes_hint": [3, 5, 7, 11, 13]
})";

const char* kElliptic5 = R"({
  "name": "elliptic_5",
  "strata": [
    {"id": "affine", "vars": ["x", "y"], "equations": ["y^2 - x^3 + x"], "inequations": []},
    {"id": "infinity", "vars": [], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 1, "smooth": true, "proper": true},
  "good_primes_hint": [3, 5, 7, 11, 13]
})";

// The plane with one point blown up: the cells of P^2 minus the point
// [0:0:1], plus the exceptional line presented as A^1 and a point.
const char* kBlowupP2 = R"({
  "name": "blowup_p2",
  "strata": [
    {"id": "cell_0", "vars": ["y", "z"], "equations": [], "inequations": []},
    {"id": "cell_1", "vars": ["z"], "equations": [], "inequations": []},
    {"id": "exc_affine", "vars": ["t"], "equations": [], "inequations": []},
    {"id": "exc_point", "vars": [], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 2, "smooth": true, "proper": true}
})";

const char* kConifold = R"({
  "name": "conifold",
  "strata": [
    {"id": "all", "vars": ["x", "y", "z", "w"], "equations": ["x*y - z*w"], "inequations": []}
  ],
  "claims": {"dim": 3, "smooth": false, "proper": false}
})";

// Small resolution obtained by blowing up the plane x = z = 0 inside the
// conifold x y = z w. Chart coordinates: chart_u covers direction [1:t] and
// embeds as (x, w t, x t, w); chart_v_rest is the leftover locus over [0:1],
// embedding as (0, y, z, 0). The two pieces are disjoint and cover.
const char* kConifoldResPlus = R"({
  "name": "conifold_res_plus",
  "strata": [
    {"id": "chart_u", "vars": ["x", "w", "t"], "equations": [], "inequations": []},
    {"id": "chart_v_rest", "vars": ["z", "y"], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 3, "smooth": true, "proper": false}
})";

// The other small resolution: blow up x = w = 0 instead; chart_u embeds as
// (x, u z, z, u x) over [1:u], chart_v_rest as (0, y, 0, w).
const char* kConifoldResMinus = R"({
  "name": "conifold_res_minus",
  "strata": [
    {"id": "chart_u", "vars": ["x", "z", "u"], "equations": [], "inequations": []},
    {"id": "chart_v_rest", "vars": ["w", "y"], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 3, "smooth": true, "proper": false}
})";

// Exceptional curves of the two small resolutions (the loci over the
// conifold point), each a line: an affine chart plus one point.
const char* kExcP1Plus = R"({
  "name": "exceptional_p1_plus",
  "strata": [
    {"id": "exc_chart", "vars": ["t"], "equations": [], "inequations": []},
    {"id": "exc_point", "vars": [], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 1, "smooth": true, "proper": true}
})";

const char* kExcP1Minus = R"({
  "name": "exceptional_p1_minus",
  "strata": [
    {"id": "exc_chart", "vars": ["u"], "equations": [], "inequations": []},
    {"id": "exc_point", "vars": [], "equations": [], "inequations": []}
  ],
  "claims": {"dim": 1, "smooth": true, "proper": true}
})";

// Quadric cone x y = z^2 and its minimal resolution, the total space of a
// degree -2 line bundle over the line: chart0 embeds as
// (x, y, z) = (b, a^2 b, a b), the leftover fiber as (0, c, 0). The zero
// section is the exceptional curve, with multiple e = 0 (crepant).
const char* kA1ConeModel = R"({
  "name": "a1_cone_resolution",
  "n": 2,
  "r": 1,
  "upstairs": {
    "name": "a1_cone_minimal_resolution",
    "strata": [
      {"id": "chart0", "vars": ["a", "b"], "equations": [], "inequations": []},
      {"id": "fiber_inf", "vars": ["c"], "equations": [], "inequations": []}
    ],
    "claims": {"dim": 2, "smooth": true, "proper": false}
  },
  "divisors": [
    {"name": "E", "e": 0, "membership": {"chart0": ["b"], "fiber_inf": ["c"]}}
  ],
  "notes": "crepant resolution of the quadric cone; zero section contracts to the vertex"
})";

const char* kA1ConeVariety = R"({
  "name": "a1_cone",
  "strata": [
    {"id": "all", "vars": ["x", "y", "z"], "equations": ["x*y - z^2"], "inequations": []}
  ],
  "claims": {"dim": 2, "smooth": false, "proper": false}
})";

// Cone over the degree-3 rational normal curve. The resolution is the total
// space of a degree -3 bundle over the line; the zero section carries
// e = -1 at index r = 3, so the discrepancy is -1/3 (log-terminal, not
// canonical).
const char* kTwistedCubicConeModel = R"({
  "name": "cone_over_twisted_cubic_resolution",
  "n": 2,
  "r": 3,
  "upstairs": {
    "name": "twisted_cubic_cone_resolution_space",
    "strata": [
      {"id": "chart0", "vars": ["a", "b"], "equations": [], "inequations": []},
      {"id": "fiber_inf", "vars": ["c"], "equations": [], "inequations": []}
    ],
    "claims": {"dim": 2, "smooth": true, "proper": false}
  },
  "divisors": [
    {"name": "E", "e": -1, "membership": {"chart0": ["b"], "fiber_inf": ["c"]}}
  ],
  "notes": "blowup of the vertex; chart0 embeds as (b, a b, a^2 b, a^3 b)"
})";

const char* kTwistedCubicConeVariety = R"({
  "name": "cone_over_twisted_cubic",
  "strata": [
    {"id": "all", "vars": ["x0", "x1", "x2", "x3"],
     "equations": ["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
     "inequations": []}
  ],
  "claims": {"dim": 2, "smooth": false, "proper": false}
})";

const char* kA2Identity = R"({
  "name": "a2_identity",
  "n": 2,
  "r": 1,
  "upstairs": {
    "name": "affine_plane",
    "strata": [
      {"id": "plane", "vars": ["x", "y"], "equations": [], "inequations": []}
    ],
    "claims": {"dim": 2, "smooth": true, "proper": false}
  },
  "divisors": []
})";

const char* kA2Blowup = R"({
  "name": "a2_blowup",
  "n": 2,
  "r": 1,
  "upstairs": {
    "name": "blowup_of_plane",
    "strata": [
      {"id": "chart0", "vars": ["x", "t"], "equations": [], "inequations": []},
      {"id": "fiber_inf", "vars": ["y"], "equations": [], "inequations": []}
    ],
    "claims": {"dim": 2, "smooth": true, "proper": false}
  },
  "divisors": [
    {"name": "E", "e": 1, "membership": {"chart0": ["x"], "fiber_inf": ["y"]}}
  ],
  "notes": "blowup of the plane at the origin; chart0 embeds as (x, x t), fiber_inf as (0, y)"
})";

// ---------------------------------------------------------------------------
// Registry.

Json coeff_map(std::initializer_list<std::pair<int, long long>> entries) {
    Json j = Json::object();
    for (const auto& [m, a] : entries) j[std::to_string(m)] = a;
    return j;
}

struct Registry {
    std::vector<GalleryEntry> entries;
    std::map<std::string, std::size_t> by_id;
    std::map<std::string, std::pair<std::size_t, std::string>> payload_alias;

    void add(GalleryEntry e) {
        by_id[e.id] = entries.size();
        for (const auto& [name, payload] : e.payloads) {
            payload_alias[e.id + "#" + name] = {entries.size(), name};
            if (payload.contains("name")) {
                const std::string alias = payload["name"].get<std::string>();
                if (!payload_alias.count(alias)) payload_alias[alias] = {entries.size(), name};
            }
        }
        entries.push_back(std::move(e));
    }
};

GalleryEntry make_projective_space(int n, const char* payload) {
    GalleryEntry e;
    e.id = "projective_space_" + std::to_string(n);
    e.title = "projective " + std::to_string(n) + "-space via its cell decomposition";
    e.payloads["main"] = Json::parse(payload);
    {
        Json cf;
        for (int m = 0; m <= n; ++m) cf[std::to_string(m)] = 1;
        e.expectations.push_back(
            {"count_closed_form",
             Json{{"primes", {2, 3, 5, 7}}, {"k_max", 4}, {"coeffs", cf}},
             "closed-form cell count"});
    }
    {
        std::vector<unsigned> betti;
        for (int j = 0; j <= 2 * n; ++j) betti.push_back(j % 2 == 0 ? 1 : 0);
        e.expectations.push_back({"betti",
                                  Json{{"p", n == 2 ? 3 : 2},
                                       {"terms", 2 * (n + 1)},
                                       {"expected", betti},
                                       {"euler", n + 1}},
                                  "alternating cell structure"});
    }
    e.references = {"disjoint affine cells of successive dimensions"};
    return e;
}

const Registry& registry() {
    static Registry reg = [] {
        Registry r;

        r.add(make_projective_space(1, kProjectiveSpace1));
        r.add(make_projective_space(2, kProjectiveSpace2));
        r.add(make_projective_space(3, kProjectiveSpace3));

        {
            GalleryEntry e;
            e.id = "elliptic_3";
            e.title = "elliptic cubic y^2 = x^3 - x over F_3";
            e.payloads["main"] = Json::parse(kElliptic3);
            e.expectations.push_back({"count",
                                      Json{{"p", 3}, {"k", 1}, {"expected", "4"}},
                                      "brute force"});
            e.expectations.push_back(
                {"count_sequence",
                 Json{{"p", 3},
                      {"terms", 8},
                      {"expected",
                       {"4", "16", "28", "64", "244", "784", "2188", "6400"}}},
                 "brute force; Frobenius trace 0 at p = 3"});
            e.expectations.push_back({"betti",
                                      Json{{"p", 3},
                                           {"terms", 8},
                                           {"expected", {1, 2, 1}},
                                           {"euler", 0}},
                                      "count fit at identifiable length"});
            e.expectations.push_back({"rh_magnitude",
                                      Json{{"p", 3}, {"terms", 8}, {"weight", 1}, {"tol", 1e-9}},
                                      "middle-weight roots have square magnitude q"});
            e.expectations.push_back({"zeta_num_den",
                                      Json{{"p", 3},
                                           {"terms", 8},
                                           {"numerator", {"1", "0", "3"}},
                                           {"denominator", {"1", "-4", "3"}}},
                                      "series expansion cross-check"});
            e.references = {"supersingular reduction: both middle roots are purely imaginary"};
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "elliptic_5";
            e.title = "elliptic cubic y^2 = x^3 - x over F_5";
            e.payloads["main"] = Json::parse(kElliptic5);
            e.expectations.push_back({"count_sequence",
                                      Json{{"p", 5},
                                           {"terms", 4},
                                           {"expected", {"8", "32", "104", "640"}}},
                                      "brute force; trace -2 at p = 5"});
            e.expectations.push_back({"betti",
                                      Json{{"p", 5},
                                           {"terms", 8},
                                           {"expected", {1, 2, 1}},
                                           {"euler", 0}},
                                      "count fit at identifiable length"});
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "blowup_p2";
            e.title = "plane with one point blown up";
            e.payloads["main"] = Json::parse(kBlowupP2);
            e.expectations.push_back({"count",
                                      Json{{"p", 3}, {"k", 1}, {"expected", "16"}},
                                      "cell count 13 - 1 + 4"});
            e.expectations.push_back(
                {"count_closed_form",
                 Json{{"primes", {2, 3, 5, 7}},
                      {"k_max", 3},
                      {"coeffs", coeff_map({{0, 1}, {1, 2}, {2, 1}})}},
                 "cells of the blowup"});
            e.expectations.push_back(
                {"compare_counts",
                 Json{{"a", "projective_space_2"},
                      {"b", "blowup_p2"},
                      {"p", 3},
                      {"terms", 3},
                      {"expected_verdict", "ALessEq"},
                      {"expected_diff_coeffs", coeff_map({{1, 1}})}},
                 "margin is exactly the exceptional defect q^k"});
            e.references = {"one extra middle class: counts exceed the plane's by q^k"};
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "conifold";
            e.title = "affine quadric cone x y = z w";
            e.payloads["main"] = Json::parse(kConifold);
            e.expectations.push_back({"count",
                                      Json{{"p", 3}, {"k", 1}, {"expected", "33"}},
                                      "brute force; equals (2q-1)^2 + (q-1)^3"});
            e.expectations.push_back(
                {"count_closed_form",
                 Json{{"primes", {2, 3, 5}},
                      {"k_max", 2},
                      {"coeffs", coeff_map({{3, 1}, {2, 1}, {1, -1}})}},
                 "fiberwise count of the quadric"});
            e.expectations.push_back(
                {"counting_polynomial",
                 Json{{"p", 2},
                      {"terms", 6},
                      {"degree", 3},
                      {"expected", coeff_map({{3, 1}, {2, 1}, {1, -1}})}},
                 "exact fit validated on surplus terms"});
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "conifold_res_plus";
            e.title = "small resolution of the conifold (plane x = z = 0 blown up)";
            e.payloads["main"] = Json::parse(kConifoldResPlus);
            e.notes = "chart_u embeds as (x, w t, x t, w); chart_v_rest as (0, y, z, 0)";
            e.expectations.push_back({"count",
                                      Json{{"p", 3}, {"k", 1}, {"expected", "36"}},
                                      "chart count q^3 + q^2"});
            e.expectations.push_back(
                {"count_closed_form",
                 Json{{"primes", {2, 3, 5}}, {"k_max", 4}, {"coeffs", coeff_map({{3, 1}, {2, 1}})}},
                 "line fibration over the exceptional line"});
            e.expectations.push_back({"counts_equal",
                                      Json{{"other", "conifold_res_minus"},
                                           {"primes", {2, 3, 5}},
                                           {"k_max", 4}},
                                      "flop partners carry identical counts"});
            e.expectations.push_back({"zeta_equal",
                                      Json{{"other", "conifold_res_minus"}, {"p", 3}, {"terms", 4}},
                                      "identical rational zeta data"});
            e.expectations.push_back({"euler_equal",
                                      Json{{"other", "conifold_res_minus"}, {"p", 3}, {"terms", 4}},
                                      "equal alternating sums"});
            e.expectations.push_back(
                {"counting_polynomial",
                 Json{{"p", 2},
                      {"terms", 6},
                      {"degree", 3},
                      {"expected", coeff_map({{3, 1}, {2, 1}})}},
                 "exact fit validated on surplus terms"});
            e.expectations.push_back(
                {"korder",
                 Json{{"a_r", 1}, {"a_entries", Json::array()}, {"b_r", 1},
                      {"b_entries", Json::array()}, {"expected", "Equal"},
                      {"annotation", "KEquivalent"}},
                 "small resolutions have no exceptional divisors at all"});
            e.references = {
                "the two small resolutions differ by a flop and are K-equivalent",
                "each is a line-pair bundle over the exceptional line: q^3 + q^2 points"};
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "conifold_res_minus";
            e.title = "small resolution of the conifold (plane x = w = 0 blown up)";
            e.payloads["main"] = Json::parse(kConifoldResMinus);
            e.notes = "chart_u embeds as (x, u z, z, u x); chart_v_rest as (0, y, 0, w)";
            e.expectations.push_back({"count",
                                      Json{{"p", 3}, {"k", 1}, {"expected", "36"}},
                                      "chart count q^3 + q^2"});
            e.expectations.push_back({"counts_equal",
                                      Json{{"other", "conifold_res_plus"},
                                           {"primes", {2, 3, 5}},
                                           {"k_max", 4}},
                                      "flop partners carry identical counts"});
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "exceptional_loci_flop";
            e.title = "exceptional curves of the two conifold resolutions";
            e.payloads["plus"] = Json::parse(kExcP1Plus);
            e.payloads["minus"] = Json::parse(kExcP1Minus);
            e.expectations.push_back(
                {"count_closed_form",
                 Json{{"payload", "plus"},
                      {"primes", {2, 3, 5}},
                      {"k_max", 3},
                      {"coeffs", coeff_map({{0, 1}, {1, 1}})}},
                 "a line: q + 1 points"});
            e.expectations.push_back({"counts_equal",
                                      Json{{"payload", "plus"},
                                           {"other", "exceptional_loci_flop#minus"},
                                           {"primes", {2, 3, 5}},
                                           {"k_max", 3}},
                                      "equal counts of the two exceptional loci"});
            e.references = {"both exceptional loci are lines, so their counts agree at every level"};
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "a1_cone";
            e.title = "quadric cone x y = z^2 with its crepant resolution";
            e.payloads["model"] = Json::parse(kA1ConeModel);
            e.payloads["cone"] = Json::parse(kA1ConeVariety);
            e.expectations.push_back({"classify",
                                      Json{{"payload", "model"}, {"expected", "Canonical"}},
                                      "single divisor at e = 0"});
            e.expectations.push_back(
                {"measure",
                 Json{{"payload", "model"}, {"p", 3}, {"k", 1}, {"coeffs", {"4/3"}}},
                 "stratified sum (q^2 + q)/q^2 at q = 3"});
            e.expectations.push_back(
                {"measure",
                 Json{{"payload", "model"}, {"p", 5}, {"k", 1}, {"coeffs", {"6/5"}}},
                 "stratified sum (q^2 + q)/q^2 at q = 5"});
            e.expectations.push_back(
                {"measure_equals_upstairs_count",
                 Json{{"payload", "model"}, {"primes", {3, 5}}, {"k", 1}},
                 "crepant model: measure is the upstairs count over q^n"});
            e.expectations.push_back(
                {"measure_minus_naive",
                 Json{{"model", "a1_cone#model"},
                      {"variety", "a1_cone#cone"},
                      {"primes", {3, 5}},
                      {"k", 1},
                      {"expected_num_coeffs", coeff_map({{1, 1}})}},
                 "weighted count exceeds the naive one by q/q^2"});
            e.references = {"weighted counting sees the resolved line in place of the vertex"};
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "cone_over_twisted_cubic";
            e.title = "cone over the twisted cubic (index 3, discrepancy -1/3)";
            e.payloads["model"] = Json::parse(kTwistedCubicConeModel);
            e.payloads["cone"] = Json::parse(kTwistedCubicConeVariety);
            e.expectations.push_back({"classify",
                                      Json{{"payload", "model"}, {"expected", "LogTerminal"}},
                                      "e/r = -1/3 > -1 but negative"});
            e.expectations.push_back(
                {"measure",
                 Json{{"payload", "model"}, {"p", 2}, {"k", 1}, {"coeffs", {"1", "1/2", "1/4"}}},
                 "closed form (q^2 + q u + u^2)/q^2 with u = q^(1/3)"});
            e.expectations.push_back(
                {"measure",
                 Json{{"payload", "model"}, {"p", 3}, {"k", 1}, {"coeffs", {"1", "1/3", "1/9"}}},
                 "closed form (q^2 + q u + u^2)/q^2 with u = q^(1/3)"});
            e.expectations.push_back(
                {"count_closed_form",
                 Json{{"payload", "cone"},
                      {"primes", {2, 3, 5}},
                      {"k_max", 2},
                      {"coeffs", coeff_map({{2, 1}})}},
                 "vertex plus scaled copies of the curve: q^2 points"});
            e.references = {"finite measure with genuinely fractional discrepancy"};
            r.add(std::move(e));
        }

        {
            GalleryEntry e;
            e.id = "a2_two_resolutions";
            e.title = "the plane counted through two different resolutions";
            e.payloads["identity"] = Json::parse(kA2Identity);
            e.payloads["blowup"] = Json::parse(kA2Blowup);
            e.expectations.push_back(
                {"measure",
                 Json{{"payload", "identity"}, {"p", 3}, {"k", 1}, {"coeffs", {"1"}}},
                 "smooth model: count over q^n"});
            e.expectations.push_back(
                {"measure",
                 Json{{"payload", "blowup"}, {"p", 3}, {"k", 1}, {"coeffs", {"1"}}},
                 "exceptional term cancels exactly"});
            e.expectations.push_back({"measures_equal",
                                      Json{{"a", "a2_two_resolutions#identity"},
                                           {"b", "a2_two_resolutions#blowup"},
                                           {"primes", {2, 3, 5}},
                                           {"k", 1}},
                                      "measure independent of the chosen resolution"});
            e.references = {"the measure of the plane equals 1 through any resolution"};
            r.add(std::move(e));
        }

        return r;
    }();
    return reg;
}

// ---------------------------------------------------------------------------
// Check helpers.

StratifiedVariety variety_of(const Json& payload) {
    if (!payload.contains("strata")) throw BadFileError("payload is not a variety");
    return io::variety_from_json(payload);
}

ResolutionModel model_of(const Json& payload) {
    if (!payload.contains("upstairs")) throw BadFileError("payload is not a resolution model");
    return io::model_from_json(payload);
}

BigInt closed_form(const Json& coeffs, const BigInt& q, unsigned k) {
    BigInt acc = 0;
    for (const auto& [m_str, a] : coeffs.items()) {
        const int m = std::stoi(m_str);
        acc += BigInt(a.get<long long>()) * ipow(q, static_cast<std::uint64_t>(m) * k);
    }
    return acc;
}

std::vector<std::uint64_t> filter_primes(const Json& params, const char* key,
                                         const std::vector<std::uint64_t>& allowed) {
    std::vector<std::uint64_t> out;
    for (const auto& pj : params[key]) {
        const std::uint64_t p = pj.get<std::uint64_t>();
        if (std::find(allowed.begin(), allowed.end(), p) != allowed.end()) out.push_back(p);
    }
    return out;
}

std::string payload_ref(const GalleryEntry& entry, const Json& params, const char* key,
                        const char* fallback) {
    if (params.contains(key)) {
        const std::string ref = params[key].get<std::string>();
        if (ref.find('#') != std::string::npos || registry().by_id.count(ref) ||
            registry().payload_alias.count(ref))
            return ref;
        return entry.id + "#" + ref;
    }
    return entry.id + "#" + fallback;
}

zeta::WeilDecomposition betti_of(const StratifiedVariety& v, std::uint64_t p, unsigned terms,
                                 std::optional<unsigned> hint = {}) {
    const CountSequence seq = varieties::count_sequence(v, p, 1, terms);
    const zeta::LinearRecurrence rec = zeta::fit_recurrence(seq, hint);
    const zeta::ZetaFunction z = zeta::zeta_function(rec, seq);
    return zeta::weil_structure(z, p, static_cast<unsigned>(v.claims.dim), v.claims);
}

std::string measure_brief(const MeasureResult& m) {
    if (!m.finite) return "infinite";
    return m.value->to_string() + " ~ " + m.value->decimal_string(12);
}

}  // namespace

std::vector<EntrySummary> list_entries() {
    std::vector<EntrySummary> out;
    for (const auto& e : registry().entries) {
        EntrySummary s;
        s.id = e.id;
        s.title = e.title;
        for (const auto& [name, payload] : e.payloads) s.payload_names.push_back(name);
        s.expectation_count = e.expectations.size();
        out.push_back(std::move(s));
    }
    return out;
}

const GalleryEntry& load(const std::string& id) {
    const auto& reg = registry();
    auto it = reg.by_id.find(id);
    if (it == reg.by_id.end()) throw UnknownEntryError("no gallery entry named '" + id + "'");
    return reg.entries[it->second];
}

const Json& resolve_payload(const std::string& reference) {
    const auto& reg = registry();
    const auto hash = reference.find('#');
    if (hash != std::string::npos) {
        const std::string id = reference.substr(0, hash);
        const std::string name = reference.substr(hash + 1);
        const GalleryEntry& entry = load(id);
        auto it = entry.payloads.find(name);
        if (it == entry.payloads.end())
            throw UnknownEntryError("entry '" + id + "' has no payload '" + name + "'");
        return it->second;
    }
    auto by_id = reg.by_id.find(reference);
    if (by_id != reg.by_id.end()) {
        const GalleryEntry& entry = reg.entries[by_id->second];
        if (entry.payloads.size() == 1) return entry.payloads.begin()->second;
        auto main = entry.payloads.find("main");
        if (main != entry.payloads.end()) return main->second;
        throw UnknownEntryError("entry '" + reference +
                                "' has several payloads; use entry#payload");
    }
    auto alias = reg.payload_alias.find(reference);
    if (alias != reg.payload_alias.end()) {
        const GalleryEntry& entry = reg.entries[alias->second.first];
        return entry.payloads.at(alias->second.second);
    }
    throw UnknownEntryError("no gallery entry or payload named '" + reference + "'");
}

CheckReport run_checks(const std::string& id, const std::vector<std::uint64_t>& primes) {
    const GalleryEntry& entry = load(id);
    CheckReport report;
    report.entry = id;

    for (const auto& ex : entry.expectations) {
        const Json& P = ex.params;
        auto emit = [&](const std::string& detail, bool pass, const std::string& expected,
                        const std::string& actual) {
            report.results.push_back({ex.kind, detail, pass, expected, actual, ex.provenance});
        };
        try {
            if (ex.kind == "count") {
                const auto v = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const unsigned k = P["k"].get<unsigned>();
                const BigInt expected{P["expected"].get<std::string>()};
                const BigInt actual = varieties::count_points(v, p, 1, k).value;
                emit("p=" + std::to_string(p) + " k=" + std::to_string(k), actual == expected,
                     expected.str(), actual.str());
            } else if (ex.kind == "count_closed_form") {
                const auto v = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const unsigned k_max = P["k_max"].get<unsigned>();
                for (std::uint64_t p : filter_primes(P, "primes", primes)) {
                    for (unsigned k = 1; k <= k_max; ++k) {
                        const BigInt q = ipow(BigInt(p), k);
                        const BigInt expected = closed_form(P["coeffs"], BigInt(p), k);
                        const BigInt actual = varieties::count_points(v, p, 1, k).value;
                        emit("p=" + std::to_string(p) + " k=" + std::to_string(k),
                             actual == expected, expected.str(), actual.str());
                        (void)q;
                    }
                }
            } else if (ex.kind == "count_sequence") {
                const auto v = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const unsigned terms = P["terms"].get<unsigned>();
                const CountSequence seq = varieties::count_sequence(v, p, 1, terms);
                for (unsigned k = 1; k <= terms; ++k) {
                    const BigInt expected{P["expected"][k - 1].get<std::string>()};
                    emit("p=" + std::to_string(p) + " k=" + std::to_string(k),
                         seq.at(k) == expected, expected.str(), seq.at(k).str());
                }
            } else if (ex.kind == "betti") {
                const auto v = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                std::optional<unsigned> hint;
                if (P.contains("hint")) hint = P["hint"].get<unsigned>();
                const auto w = betti_of(v, p, P["terms"].get<unsigned>(), hint);
                std::vector<unsigned> expected;
                for (const auto& h : P["expected"]) expected.push_back(h.get<unsigned>());
                const bool pass = w.betti == expected &&
                                  w.euler == P["euler"].get<long long>() && w.purity_ok;
                std::ostringstream exp_s, act_s;
                exp_s << Json(expected).dump() << " euler=" << P["euler"].get<long long>();
                act_s << Json(w.betti).dump() << " euler=" << w.euler
                      << " purity=" << (w.purity_ok ? "ok" : "violated");
                emit("p=" + std::to_string(p), pass, exp_s.str(), act_s.str());
            } else if (ex.kind == "rh_magnitude") {
                const auto v = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const auto w = betti_of(v, p, P["terms"].get<unsigned>());
                const int weight = P["weight"].get<int>();
                const double tol = P["tol"].get<double>();
                const double target = std::pow(static_cast<double>(p), weight / 2.0);
                bool pass = false;
                double worst = 0;
                for (const auto& root : w.roots) {
                    if (root.weight != weight) continue;
                    pass = true;
                    worst = std::max(worst, std::abs(std::abs(root.value) - target));
                }
                pass = pass && worst <= tol;
                emit("p=" + std::to_string(p) + " weight=" + std::to_string(weight), pass,
                     "| |root| - q^(j/2) | <= " + std::to_string(tol),
                     "max deviation " + std::to_string(worst));
            } else if (ex.kind == "zeta_num_den") {
                const auto v = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const CountSequence seq = varieties::count_sequence(v, p, 1, P["terms"].get<unsigned>());
                const auto z = zeta::zeta_function(zeta::fit_recurrence(seq), seq);
                std::vector<BigInt> num, den;
                for (const auto& c : P["numerator"]) num.emplace_back(c.get<std::string>());
                for (const auto& c : P["denominator"]) den.emplace_back(c.get<std::string>());
                const bool pass = z.numerator == num && z.denominator == den;
                auto render = [](const std::vector<BigInt>& poly) {
                    std::string s = "[";
                    for (std::size_t i = 0; i < poly.size(); ++i)
                        s += (i ? "," : "") + poly[i].str();
                    return s + "]";
                };
                emit("p=" + std::to_string(p), pass, render(num) + "/" + render(den),
                     render(z.numerator) + "/" + render(z.denominator));
            } else if (ex.kind == "counts_equal") {
                const auto va = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const auto vb = variety_of(resolve_payload(P["other"].get<std::string>()));
                const unsigned k_max = P["k_max"].get<unsigned>();
                for (std::uint64_t p : filter_primes(P, "primes", primes)) {
                    for (unsigned k = 1; k <= k_max; ++k) {
                        const BigInt a = varieties::count_points(va, p, 1, k).value;
                        const BigInt b = varieties::count_points(vb, p, 1, k).value;
                        emit("p=" + std::to_string(p) + " k=" + std::to_string(k), a == b,
                             "equal counts", a.str() + " vs " + b.str());
                    }
                }
            } else if (ex.kind == "zeta_equal") {
                const auto va = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const auto vb = variety_of(resolve_payload(P["other"].get<std::string>()));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const unsigned terms = P["terms"].get<unsigned>();
                const auto sa = varieties::count_sequence(va, p, 1, terms);
                const auto sb = varieties::count_sequence(vb, p, 1, terms);
                const auto za = zeta::zeta_function(zeta::fit_recurrence(sa), sa);
                const auto zb = zeta::zeta_function(zeta::fit_recurrence(sb), sb);
                emit("p=" + std::to_string(p), za == zb, "identical zeta functions",
                     za == zb ? "identical" : "different");
            } else if (ex.kind == "euler_equal") {
                const auto va = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const auto vb = variety_of(resolve_payload(P["other"].get<std::string>()));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const unsigned terms = P["terms"].get<unsigned>();
                const auto wa = betti_of(va, p, terms);
                const auto wb = betti_of(vb, p, terms);
                emit("p=" + std::to_string(p), wa.euler == wb.euler, "equal Euler numbers",
                     std::to_string(wa.euler) + " vs " + std::to_string(wb.euler));
            } else if (ex.kind == "compare_counts") {
                const auto va = variety_of(resolve_payload(P["a"].get<std::string>()));
                const auto vb = variety_of(resolve_payload(P["b"].get<std::string>()));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const unsigned terms = P["terms"].get<unsigned>();
                const auto sa = varieties::count_sequence(va, p, 1, terms);
                const auto sb = varieties::count_sequence(vb, p, 1, terms);
                const auto rep = zeta::compare(sa, sb);
                bool pass = std::string(zeta::to_string(rep.verdict)) ==
                            P["expected_verdict"].get<std::string>();
                if (P.contains("expected_diff_coeffs")) {
                    for (const auto& row : rep.rows) {
                        const BigInt margin = closed_form(P["expected_diff_coeffs"], BigInt(p), row.k);
                        if (row.b - row.a != margin) pass = false;
                    }
                }
                emit("p=" + std::to_string(p), pass, P["expected_verdict"].get<std::string>(),
                     zeta::to_string(rep.verdict));
            } else if (ex.kind == "counting_polynomial") {
                const auto v = variety_of(resolve_payload(payload_ref(entry, P, "payload", "main")));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const auto seq = varieties::count_sequence(v, p, 1, P["terms"].get<unsigned>());
                const auto cp = zeta::counting_polynomial(seq, P["degree"].get<unsigned>());
                bool pass = cp.has_value();
                std::string actual = "no polynomial count";
                if (cp) {
                    std::map<unsigned, BigInt> expected;
                    for (const auto& [m_str, a] : P["expected"].items())
                        expected[static_cast<unsigned>(std::stoi(m_str))] = BigInt(a.get<long long>());
                    pass = cp->coeffs == expected;
                    actual = "";
                    for (const auto& [m, a] : cp->coeffs)
                        actual += (actual.empty() ? "" : " + ") + a.str() + "*T^" + std::to_string(m);
                }
                emit("p=" + std::to_string(p), pass, P["expected"].dump(), actual);
            } else if (ex.kind == "classify") {
                const auto m = model_of(resolve_payload(payload_ref(entry, P, "payload", "model")));
                const auto verdict = birational::classify(padic::discrepancy_of(m));
                emit("", std::string(birational::to_string(verdict)) ==
                             P["expected"].get<std::string>(),
                     P["expected"].get<std::string>(), birational::to_string(verdict));
            } else if (ex.kind == "korder") {
                DiscrepancyVector a, b;
                a.r = P["a_r"].get<unsigned>();
                for (const auto& ej : P["a_entries"])
                    a.entries.emplace_back(ej["name"].get<std::string>(), ej["e"].get<long long>());
                b.r = P["b_r"].get<unsigned>();
                for (const auto& ej : P["b_entries"])
                    b.entries.emplace_back(ej["name"].get<std::string>(), ej["e"].get<long long>());
                const auto verdict = birational::compare_k_order(a, b);
                emit(P.contains("annotation") ? P["annotation"].get<std::string>() : "",
                     std::string(birational::to_string(verdict)) == P["expected"].get<std::string>(),
                     P["expected"].get<std::string>(), birational::to_string(verdict));
            } else if (ex.kind == "measure") {
                const auto m = model_of(resolve_payload(payload_ref(entry, P, "payload", "model")));
                const std::uint64_t p = P["p"].get<std::uint64_t>();
                const unsigned k = P["k"].get<unsigned>();
                const MeasureResult actual = padic::snc_measure(m, p, 1, k);
                bool pass;
                std::string expected_str;
                if (P.contains("coeffs")) {
                    std::vector<Rational> coeffs;
                    for (const auto& c : P["coeffs"]) coeffs.push_back(rational_from_string(c.get<std::string>()));
                    coeffs.resize(m.r, Rational(0));
                    const BigInt q = ipow(BigInt(p), k);
                    const auto expected = ExtendedRational::from_coeffs(coeffs, m.r, q);
                    pass = actual.finite && *actual.value == expected;
                    expected_str = expected.to_string();
                } else {
                    pass = !actual.finite;
                    expected_str = "infinite";
                }
                emit("p=" + std::to_string(p) + " k=" + std::to_string(k), pass, expected_str,
                     measure_brief(actual));
            } else if (ex.kind == "measures_equal") {
                const auto ma = model_of(resolve_payload(P["a"].get<std::string>()));
                const auto mb = model_of(resolve_payload(P["b"].get<std::string>()));
                const unsigned k = P["k"].get<unsigned>();
                for (std::uint64_t p : filter_primes(P, "primes", primes)) {
                    const auto a = padic::snc_measure(ma, p, 1, k);
                    const auto b = padic::snc_measure(mb, p, 1, k);
                    const bool pass = a.finite && b.finite && *a.value == *b.value;
                    emit("p=" + std::to_string(p), pass, "equal measures",
                         measure_brief(a) + " vs " + measure_brief(b));
                }
            } else if (ex.kind == "measure_equals_upstairs_count") {
                const auto m = model_of(resolve_payload(payload_ref(entry, P, "payload", "model")));
                const unsigned k = P["k"].get<unsigned>();
                for (std::uint64_t p : filter_primes(P, "primes", primes)) {
                    const auto actual = padic::snc_measure(m, p, 1, k);
                    const BigInt count = varieties::count_points(m.upstairs, p, 1, k).value;
                    const BigInt q = ipow(BigInt(p), k);
                    const auto expected = ExtendedRational::from_rational(
                        Rational(count, ipow(q, m.n)), m.r, q);
                    const bool pass = actual.finite && *actual.value == expected;
                    emit("p=" + std::to_string(p), pass, expected.to_string(),
                         measure_brief(actual));
                }
            } else if (ex.kind == "measure_minus_naive") {
                const auto m = model_of(resolve_payload(P["model"].get<std::string>()));
                const auto v = variety_of(resolve_payload(P["variety"].get<std::string>()));
                const unsigned k = P["k"].get<unsigned>();
                for (std::uint64_t p : filter_primes(P, "primes", primes)) {
                    const auto actual = padic::snc_measure(m, p, 1, k);
                    const BigInt q = ipow(BigInt(p), k);
                    const BigInt naive = varieties::count_points(v, p, 1, k).value;
                    const BigInt diff_num = closed_form(P["expected_num_coeffs"], BigInt(p), k);
                    const auto expected = ExtendedRational::from_rational(
                        Rational(naive + diff_num, ipow(q, m.n)), m.r, q);
                    const bool pass = actual.finite && *actual.value == expected;
                    emit("p=" + std::to_string(p), pass, expected.to_string(),
                         measure_brief(actual));
                }
            } else {
                emit("", false, "known expectation kind", "unknown kind '" + ex.kind + "'");
            }
        } catch (const Error& err) {
            report.results.push_back(
                {ex.kind, "exception", false, "successful evaluation", err.kind() + ": " + err.what(),
                 ex.provenance});
        }
    }
    return report;
}

}  // namespace zetakit::gallery
