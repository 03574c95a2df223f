#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ascurves/cover.hpp"
#include "ascurves/deform.hpp"
#include "ascurves/refinement_graph.hpp"
#include "ascurves/strata.hpp"

namespace ascurves::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Cover text format
//
//   line 1:  p n
//   line 2:  modulus coefficients   (n+1 integers in [0, p), ascending degree)
//   line 3:  numerator coefficients (element indices in [0, p^n), ascending)
//   line 4:  denominator coefficients
//
// An element index encodes the coordinate vector in base-p digits, little
// endian. Blank lines and lines starting with '#' are skipped.
// ---------------------------------------------------------------------------

namespace detail_io {

inline std::vector<std::uint64_t> parse_line(std::istream& in, const std::string& what) {
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ss(line);
        std::vector<std::uint64_t> out;
        std::uint64_t v;
        while (ss >> v) out.push_back(v);
        std::string tail;
        if (ss.clear(), ss >> tail) throw std::invalid_argument("cover file: non-numeric token in " + what);
        return out;
    }
    throw std::invalid_argument("cover file: missing " + what);
}

}  // namespace detail_io

inline covers::ASCover read_cover(std::istream& in) {
    const auto header = detail_io::parse_line(in, "field line 'p n'");
    if (header.size() != 2) throw std::invalid_argument("cover file: field line must be 'p n'");
    const auto p = static_cast<std::uint32_t>(header[0]);
    const auto n = static_cast<std::uint32_t>(header[1]);
    const auto mod64 = detail_io::parse_line(in, "modulus line");
    if (mod64.size() != n + 1) throw std::invalid_argument("cover file: modulus must have n+1 coefficients");
    std::vector<std::uint32_t> modulus(mod64.begin(), mod64.end());
    FieldPtr field;
    try {
        field = FiniteField::make(p, std::move(modulus));
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("cover file: bad field: ") + e.what());
    }
    const auto read_poly = [&](const std::string& what) {
        const auto raw = detail_io::parse_line(in, what);
        Poly out;
        out.c.reserve(raw.size());
        for (auto v : raw) {
            if (v >= field->size()) throw std::invalid_argument("cover file: coefficient out of range in " + what);
            out.c.push_back(static_cast<FiniteField::Elem>(v));
        }
        out.trim();
        return out;
    };
    Poly num = read_poly("numerator line");
    Poly den = read_poly("denominator line");
    try {
        return covers::make_cover(field, std::move(num), std::move(den));
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("cover file: ") + e.what());
    }
}

inline covers::ASCover read_cover_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open cover file: " + path);
    return read_cover(in);
}

inline void write_cover(std::ostream& out, const covers::ASCover& cover) {
    const auto& F = *cover.field;
    out << F.characteristic() << " " << F.degree() << "\n";
    for (std::size_t i = 0; i < F.modulus().size(); ++i) out << (i ? " " : "") << F.modulus()[i];
    out << "\n";
    const auto put_poly = [&](const Poly& poly) {
        if (poly.is_zero()) {
            out << 0;
        } else {
            for (std::size_t i = 0; i < poly.c.size(); ++i) out << (i ? " " : "") << poly.c[i];
        }
        out << "\n";
    };
    put_poly(cover.f.num);
    put_poly(cover.f.den);
}

// ---------------------------------------------------------------------------
// JSON views (stable key order everywhere)
// ---------------------------------------------------------------------------

inline json to_json(const strata::Partition& E) { return json(E.parts()); }

inline json stratum_record(int p, const strata::Partition& E) {
    const auto dims = strata::cover_stratum_dimension(p, E);
    const auto step = refgraph::prank_closure_step(p, E);
    json rec;
    rec["p"] = p;
    rec["d"] = E.d();
    rec["g"] = strata::genus_of(p, E);
    rec["r"] = E.r();
    rec["s"] = strata::p_rank_of(p, E);
    rec["partition"] = to_json(E);
    rec["dim_AS"] = strata::stratum_dimension(p, E);
    rec["dim_cov"] = dims.dim_cover;
    rec["N_E"] = dims.fibre_dim;
    rec["closure_step"] = step ? to_json(step->target) : json(nullptr);
    return rec;
}

inline json to_json(const refgraph::RefinementGraph& g) {
    json out;
    out["p"] = g.p;
    out["d"] = g.d;
    out["vertices"] = json::array();
    for (const auto& v : g.vertices) out["vertices"].push_back(to_json(v));
    out["edges"] = json::array();
    for (const auto& e : g.edges) {
        json je;
        je["source"] = e.source;
        je["target"] = e.target;
        je["split_from"] = e.info.split_from;
        je["split_into"] = e.info.split_into;
        je["type"] = e.info.edge_type;
        je["closure"] = refgraph::to_string(e.info.closure);
        je["dim_delta"] = e.info.dim_delta;
        out["edges"].push_back(je);
    }
    return out;
}

inline json field_json(const FiniteField& F) {
    json out;
    out["p"] = F.characteristic();
    out["n"] = F.degree();
    out["modulus"] = F.modulus();
    out["name"] = F.name();
    return out;
}

inline json to_json(const covers::CoverAnalysis& an) {
    const auto& F = *an.reduced.field;
    json out;
    out["field"] = field_json(F);
    out["standard_form"] = rf_to_string(F, an.reduced.f);
    out["dropped_constant"] = F.to_string(an.dropped_constant);
    out["splitting_field"] = an.ext->name();
    out["branch_places"] = json::array();
    for (const auto& place : an.places) {
        json jp;
        jp["x"] = place.at_infinity ? "infinity" : an.ext->to_string(place.location);
        jp["lower_jump"] = place.lower_jump;
        out["branch_places"].push_back(jp);
    }
    out["partition"] = to_json(an.partition);
    out["genus"] = an.genus;
    out["p_rank"] = an.p_rank;
    return out;
}

inline json to_json(const covers::ZetaData& z) {
    json out;
    out["genus"] = z.genus;
    out["p_rank"] = z.p_rank;
    json lp = json::array();
    for (const auto& c : z.l_poly) lp.push_back(c.str());
    out["L"] = lp;
    out["cross_checked"] = z.cross_checked;
    return out;
}

inline json to_json(const deform::DeformationReport& rep) {
    const auto& F = *rep.field;
    const auto fibre = [&](const deform::FibreInvariants& fi) {
        json out;
        out["partition"] = to_json(fi.partition);
        out["genus"] = fi.genus;
        out["p_rank"] = fi.p_rank;
        out["p_rank_oracle"] = fi.oracle_p_rank ? json(*fi.oracle_p_rank) : json(nullptr);
        return out;
    };
    json out;
    out["p"] = rep.p;
    out["e1"] = rep.e1;
    out["e2"] = rep.e2;
    out["field"] = F.name();
    out["t0"] = F.to_string(rep.t0);
    out["special"] = fibre(rep.special);
    out["generic"] = fibre(rep.generic);
    json checks;
    checks["special_partition"] = rep.special_partition_ok;
    checks["generic_partition"] = rep.generic_partition_ok;
    checks["genus_equal"] = rep.genus_equal_ok;
    checks["p_rank_jump"] = rep.p_rank_jump_ok;
    checks["expansion"] = rep.expansion_ok;
    out["checks"] = checks;
    out["pass"] = rep.pass();
    return out;
}

}  // namespace ascurves::io
