/*
   Copyright 2025 The hecke-cf Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef HECKE_SYMBOLIC_HPP
#define HECKE_SYMBOLIC_HPP

#include <string>
#include <vector>

#include "hecke/cf.hpp"

namespace hecke {

enum class MapTag { f, f_star };

std::string map_name(MapTag t);
MapTag parse_map(const std::string& s);

/* Partition symbol: a digit, refined by an orbit cell index, or a tail class of all
   digits beyond the cutoff with the sign of digit. */
struct Symbol {
    Digit digit = 0;
    int index = 0;
    bool tail = false;

    int sign() const { return digit > 0 ? 1 : -1; }
    Symbol mirror() const { return {-digit, index, tail}; }
    std::string str() const;

    friend bool operator==(const Symbol&, const Symbol&) = default;
};

struct BoundaryError : DomainError {
    BoundaryError(const std::string& what, Real p) : DomainError(what), point(std::move(p)) {}
    Real point;
};

struct Cell {
    Symbol label;
    Real lo, hi;
};

/* A displayed image identity f(source) = [lo, hi] and whether it holds exactly. */
struct ImageIdentity {
    std::string source;
    Digit branch = 0;
    Real src_lo, src_hi;
    Real lo, hi;
    bool holds = false;
};

struct MarkovPartition {
    int q = 3;
    MapTag map = MapTag::f;
    Digit cutoff = 8;
    /* phi_0..phi_kappa or psi_0..psi_{kappa+1} (the last one is 0). */
    std::vector<Real> orbit;
    /* Iteration count producing orbit[i] from its start point. */
    std::vector<int> orbit_step;
    std::vector<Cell> cells;  // sorted left to right
    /* Per cell, the indices of the cells making up its image. */
    std::vector<std::vector<std::size_t>> images;
    std::vector<ImageIdentity> identities;
    /* Empty index ranges in the identities and table rows, kept for diagnostics. */
    std::vector<std::string> notes;

    std::size_t find(const Symbol& s) const;
    /* Index of the cell whose class contains a digit. */
    std::size_t find_digit(Digit d, int index) const;
    Real bound() const;
};

/* Ordered orbit of -lambda/2 under f or of -R under f*, kappa + 1 points. */
std::vector<Real> orbit_points(int q, MapTag map);
/* Checks -R = psi_0 < phi_0 < psi_1 < ... < psi_kappa < phi_kappa = 0. */
bool orbit_interleaving(int q);

/* Unrefined digit interval J_m, or J*_m for the dual map. */
std::pair<Real, Real> digit_cell(int q, MapTag map, Digit m);
/* Branch -1/x - m lambda. */
Real branch(int q, Digit m, const Real& x);
/* Inverse branch -1/(y + m lambda). */
Real inverse_branch(int q, Digit m, const Real& y);

/* Throws DomainError naming the first identity or Markov image that fails. */
MarkovPartition build_partition(int q, MapTag map, Digit cutoff = 8);
/* Same construction without throwing; failures are recorded in identities[i].holds. */
MarkovPartition build_partition_unchecked(int q, MapTag map, Digit cutoff = 8);

struct TransitionMatrix {
    int q = 3;
    MapTag map = MapTag::f;
    std::vector<Symbol> alphabet;
    std::vector<std::vector<char>> adj;

    std::size_t index(const Symbol& s) const;
    bool operator()(const Symbol& a, const Symbol& b) const;
};

/* Adjacency from cell inclusion in images. */
TransitionMatrix transition_matrix(const MarkovPartition& p);
TransitionMatrix transition_matrix(int q, MapTag map, Digit cutoff = 8);
/* Literal reading of the published matrix definitions; symbols outside the alphabet are dropped. */
TransitionMatrix published_matrix(int q, MapTag map, Digit cutoff = 8);

/* Whether a digit word is the image of an admissible symbol path. */
bool admissible(const TransitionMatrix& m, const Word& w);

enum class Side { none, left, right };

struct Encoding {
    std::vector<Symbol> symbols;
    Word digits;
    bool terminated = false;  // the orbit hit 0
};

/* Cell itinerary of x under n steps of the map. Boundary hits throw BoundaryError
   unless a side is chosen. */
Encoding encode(const MarkovPartition& p, const Real& x, std::size_t n, Side side = Side::none);

struct Decoded {
    Real lo, hi;
};

/* Nested cell interval of an admissible itinerary. */
Decoded decode(const MarkovPartition& p, const Encoding& e);
/* Exact point of the eventually periodic itinerary [pre, (period)*]. */
Real decode_periodic(const MarkovPartition& p, const Word& pre, const Word& period);

std::string to_dot(const TransitionMatrix& m);

}  // namespace hecke

#endif
