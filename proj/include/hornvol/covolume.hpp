#pragma once

#include "hornvol/rootsys.hpp"

#include <optional>

namespace hornvol {

// Squared covolume of the lattice spanned by the columns (e_a ; A_a) where A
// lists the non-simple positive roots in simple-root coordinates.
BigInt gram_delta_from_roots(const std::vector<IVec>& non_simple_roots);
BigInt gram_delta(const RootSystem& rs);

// (h^v)^r / det(C) * prod_i <theta,theta> / <alpha_i,alpha_i>
Rational formula_delta(const RootSystem& rs);

// Tabulated closed form, when one exists for the family.
std::optional<BigInt> table_delta(Family f, int rank);

struct CovolumeReport {
    Family family = Family::A;
    int rank = 0;
    BigInt delta_gram;
    Rational delta_formula;
    std::optional<BigInt> table_value;
    bool agree = false;
    std::string name() const;
};

CovolumeReport covolume_report(const RootSystem& rs);

// Markdown table with one row per report. Results rest on the assumption that
// the lattice is generated by the listed vectors, so they are labelled as
// consistent with the conjectured value rather than proven.
std::string covolume_markdown(const std::vector<CovolumeReport>& reports);

}  // namespace hornvol
