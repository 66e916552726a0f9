#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ordsec/ordinal_encoding.hpp"
#include "ordsec/time_series.hpp"

namespace ordsec {

enum class SignClass { negative, positive };

/// Where a return map's section points came from.
struct MapSource {
    enum class Kind { entries, partition, maxima };
    Kind kind = Kind::entries;
    OrdinalPattern pattern;  // only for Kind::partition

    static MapSource of_partition(OrdinalPattern p) { return {Kind::partition, std::move(p)}; }
    static MapSource of_maxima() { return {Kind::maxima, {}}; }

    /// "partition:4-3-2-1", "maxima" or "entries".
    std::string tag(Ranking display = Ranking::chronological) const;
};

/// First return map: pairs (v_k, v_{k+1}) of section values, chained.
struct ReturnMap {
    std::vector<std::pair<double, double>> pairs;
    MapSource source;
    std::vector<std::size_t> entry_indices;

    std::size_t size() const noexcept { return pairs.size(); }
};

struct DiagonalSplit {
    std::size_t above = 0;  ///< v_next > v
    std::size_t below = 0;
    std::size_t on = 0;

    bool both_sides() const noexcept { return above > 0 && below > 0; }
    bool one_side() const noexcept { return (above == 0) != (below == 0); }
};

/// Throws LengthError for fewer than two entries, ConfigError for indices
/// out of range or not strictly ascending.
ReturnMap frm_from_entries(const TimeSeries& series, std::span<const std::size_t> entry_indices,
                           MapSource source = {});

/// Strict local maxima; a flat top counts once, at its first index, when
/// both sides fall away from it.
std::vector<std::size_t> local_maxima_indices(const TimeSeries& series);

struct MaximaFrm {
    ReturnMap combined;
    /// Sign class of each maximum (aligned with combined.entry_indices);
    /// empty unless a sign split was requested.
    std::vector<SignClass> classes;

    /// Per-pair tag "maxima:+" / "maxima:-" from the class of the first
    /// element, or "maxima" without a split.
    std::vector<std::string> pair_tags() const;
    /// Return map restricted to maxima of one class, in temporal order.
    ReturnMap for_class(SignClass cls) const;
};

/// Throws LengthError when fewer than three maxima exist.
MaximaFrm maxima_frm(const TimeSeries& series, bool sign_split);

/// Reference line for diagonal_split: the identity y = x, or the
/// anti-diagonal y = -x, which separates the two wings of a sign-symmetric
/// attractor.
enum class Diagonal { identity, anti };

/// Counts pairs strictly above / below / exactly on the chosen diagonal.
DiagonalSplit diagonal_split(const ReturnMap& map, Diagonal diagonal = Diagonal::identity);

/// Mean over points of `from` of the distance to the nearest point of `to`.
double mean_nearest_distance(const ReturnMap& from, const ReturnMap& to);

/// Diagonal length of the axis-aligned bounding box of the map's points.
double bounding_box_diagonal(const ReturnMap& map);

}  // namespace ordsec
