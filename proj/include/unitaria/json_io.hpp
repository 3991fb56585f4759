// JSON schemas for the toolkit's value types.  Exact rationals travel as
// strings "num/den"; decimal strings are parsed exactly as p/10^k.
#pragma once

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "unitaria/bigfloat.hpp"
#include "unitaria/field_elem.hpp"
#include "unitaria/hecke.hpp"
#include "unitaria/hermitian_space.hpp"
#include "unitaria/qexp.hpp"

namespace unitaria {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// "p/q", "p", or a decimal literal, parsed exactly.
inline Rational rational_from_string(const std::string& s) {
    if (s.find('/') != std::string::npos) return Rational::from_string(s);
    auto dot = s.find('.');
    if (dot == std::string::npos) return Rational::from_string(s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    std::size_t frac_len = s.size() - dot - 1;
    Integer den = pow_int(Integer(10), frac_len);
    return Rational(Integer(digits, 10), den);
}

inline Json to_json(const Rational& r) { return r.str(); }

inline Rational rational_from_json(const Json& j) {
    if (j.is_number_integer()) return Rational(Integer(j.get<long>()));
    if (j.is_string()) return rational_from_string(j.get<std::string>());
    throw std::invalid_argument("expected an exact rational as string");
}

inline Json to_json(const FieldElem& x) { return Json{{"a", x.a().str()}, {"b", x.b().str()}}; }

inline FieldElem field_elem_from_json(const Json& j, std::uint64_t d) {
    return FieldElem(d, rational_from_json(j.at("a")), rational_from_json(j.at("b")));
}

inline Json to_json(const FieldMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

inline FieldMatrix field_matrix_from_json(const Json& j, std::uint64_t d) {
    std::size_t rows = j.size();
    std::size_t cols = rows ? j.at(0).size() : 0;
    FieldMatrix m(rows, cols, FieldElem::rational(d, Rational(0)));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = field_elem_from_json(j.at(i).at(c), d);
    return m;
}

inline Json to_json(const HermitianSpace& s) {
    return Json{{"schema", kSchemaVersion}, {"d", s.d()}, {"n", s.n()}, {"gram", to_json(s.gram())}};
}

inline HermitianSpace hermitian_space_from_json(const Json& j) {
    std::uint64_t d = j.at("d").get<std::uint64_t>();
    return HermitianSpace(d, field_matrix_from_json(j.at("gram"), d));
}

inline Json to_json(const HermLattice& l) {
    Json basis = Json::array();
    for (const auto& b : l.basis()) basis.push_back(to_json(b));
    return Json{{"schema", kSchemaVersion}, {"d", l.d()}, {"n", l.n()}, {"basis", basis}};
}

inline HermLattice herm_lattice_from_json(const Json& j) {
    std::uint64_t d = j.at("d").get<std::uint64_t>();
    std::size_t n = j.at("n").get<std::size_t>();
    std::vector<FieldMatrix> basis;
    for (const auto& b : j.at("basis")) basis.push_back(field_matrix_from_json(b, d));
    return HermLattice(d, n, std::move(basis));
}

inline Json to_json(const FourierExpansion<Rational>& f) {
    Json coeffs = Json::array();
    for (const auto& [h, c] : f.coeffs())
        coeffs.push_back(Json{{"index", to_json(h.matrix())}, {"value", c.str()}});
    return Json{{"schema", kSchemaVersion},
                {"lattice", to_json(f.lattice())},
                {"trace_bound", f.trace_bound().str()},
                {"coeffs", coeffs}};
}

inline FourierExpansion<Rational> fourier_expansion_from_json(const Json& j) {
    HermLattice lat = herm_lattice_from_json(j.at("lattice"));
    std::uint64_t d = lat.d();
    FourierExpansion<Rational> f(lat, rational_from_json(j.at("trace_bound")));
    for (const auto& entry : j.at("coeffs"))
        f.set(HermIndex(field_matrix_from_json(entry.at("index"), d)),
              rational_from_json(entry.at("value")));
    return f;
}

inline Json to_json(const BigComplex& z) { return Json{{"re", z.re().str()}, {"im", z.im().str()}}; }

/// Satake file: {"schema":1, "entries":[{"place":p, "esym":[...]} or
/// {"place":p, "params":[...]}], "default_factor": {...}}.  Entries with
/// explicit params must have rational params (exact strings or decimals);
/// the elementary symmetric functions are then computed exactly.
struct SatakeFile {
    std::map<std::uint64_t, EulerFactor> explicit_factors;
    std::optional<std::vector<Rational>> default_esym;

    std::map<std::uint64_t, EulerFactor> factors_up_to(std::uint64_t cutoff) const {
        std::map<std::uint64_t, EulerFactor> out = explicit_factors;
        if (default_esym)
            for (std::uint64_t p : primes_up_to(cutoff))
                if (!out.count(p)) out.emplace(p, euler_factor(SatakeData(p, default_esym->size(),
                                                                          *default_esym, {})));
        return out;
    }
};

inline std::vector<Rational> esym_from_params(const std::vector<Rational>& params) {
    std::vector<Rational> e(params.size() + 1, Rational(0));
    e[0] = Rational(1);
    for (const auto& p : params)
        for (std::size_t j = e.size() - 1; j >= 1; --j) e[j] += p * e[j - 1];
    return std::vector<Rational>(e.begin() + 1, e.end());
}

inline SatakeFile satake_file_from_json(const Json& j) {
    SatakeFile out;
    auto parse_entry = [](const Json& entry) {
        std::vector<Rational> esym;
        if (entry.contains("esym")) {
            for (const auto& v : entry.at("esym")) esym.push_back(rational_from_json(v));
        } else if (entry.contains("params")) {
            std::vector<Rational> params;
            for (const auto& v : entry.at("params")) params.push_back(rational_from_json(v));
            esym = esym_from_params(params);
        } else {
            throw std::invalid_argument("satake entry needs esym or params");
        }
        return esym;
    };
    if (j.contains("entries"))
        for (const auto& entry : j.at("entries")) {
            std::uint64_t p = entry.at("place").get<std::uint64_t>();
            auto esym = parse_entry(entry);
            out.explicit_factors.emplace(p, euler_factor(SatakeData(p, esym.size(), esym, {})));
        }
    if (j.contains("default_factor")) out.default_esym = parse_entry(j.at("default_factor"));
    return out;
}

}  // namespace unitaria
