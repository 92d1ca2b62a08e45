#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "shssa/decomposition.hpp"

namespace shssa {

enum class EspritMethod { ls, tls };
enum class PairingMethod { esprit2d, memp };

EspritMethod parse_esprit_method(const std::string& s);
PairingMethod parse_pairing_method(const std::string& s);

/// Characteristic root mu = |mu| e^{i arg}. period = 2 pi / arg (infinite for
/// positive real roots), rate = ln |mu|, arg in (-pi, pi].
struct RootEstimate {
    Complex root;
    double period = 0;
    double rate = 0;
    double modulus = 0;
    double argument = 0;
};

RootEstimate make_root(Complex mu);

/// Paired x- and y-roots of one planar exponential term.
struct RootPair2D {
    RootEstimate x;
    RootEstimate y;
};

/// Row index pairs (a, b) with window cell b = a shifted by one along x
/// (axis 0) or y (axis 1), both inside the window.
std::vector<std::pair<int, int>> shift_pairs(const Shape& window, int axis);

/// Shift matrix of basis rows: LS solves U_a D = U_b, TLS uses the SVD of [U_a U_b].
CMatrix esprit_shift(const CMatrix& U, const std::vector<std::pair<int, int>>& pairs, EspritMethod m);

/// Roots from the eigenvectors in `group` (0-based), sorted by descending
/// |period| with positive periods first on ties. Needs a single-column window.
std::vector<RootEstimate> esprit_1d(const Decomposition& d, const std::vector<int>& group,
                                    EspritMethod m = EspritMethod::ls);

/// Paired roots for 2D and shaped windows. esprit2d diagonalizes
/// Dx + gamma Dy for a pseudo-random gamma drawn from `seed`; memp
/// diagonalizes Dx and resolves repeated x-roots with Dy restricted to each
/// cluster. Sorted like esprit_1d on the x-root, then the y-root.
std::vector<RootPair2D> esprit_2d(const Decomposition& d, const std::vector<int>& group,
                                  PairingMethod m = PairingMethod::esprit2d, EspritMethod shift = EspritMethod::ls,
                                  std::uint64_t seed = 1);

/// Sorting used by the estimators.
void sort_roots(std::vector<RootEstimate>& roots);

/// Aligned text table: period, rate | Mod, Arg | Re, Im.
std::string roots_to_report(const std::vector<RootEstimate>& roots);
std::string roots_to_csv(const std::vector<RootEstimate>& roots);
std::string pairs_to_report(const std::vector<RootPair2D>& pairs);
std::string pairs_to_csv(const std::vector<RootPair2D>& pairs);

}  // namespace shssa
