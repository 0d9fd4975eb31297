#ifndef QRANK_OVERPARTITIONS_HPP
#define QRANK_OVERPARTITIONS_HPP

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "qrank/qseries.hpp"

namespace qrank {

class UnsupportedCase : public Error {
public:
    using Error::Error;
};

struct Part {
    int value;
    bool overlined;
};

/// Parts in non-increasing order; among equal values the overlined copy
/// (if any) comes first.
struct Overpartition {
    std::vector<Part> parts;

    int size() const;
    int largest() const { return parts.empty() ? 0 : parts.front().value; }
    std::string str() const;
};

std::vector<Overpartition> enumerate_overpartitions(int n);

/// Largest part minus number of parts; 0 for the empty overpartition.
int rank(const Overpartition& p);
/// ceil(l/2) - #parts + #(odd non-overlined parts) - chi, where chi = 1 iff
/// the largest part is odd and non-overlined; 0 for the empty overpartition.
int m2_rank(const Overpartition& p);

/// pbar(0..maxN) from the product (-q)_inf/(q)_inf.
std::vector<BigInt> overpartition_counts(int maxN);

/// Nbar_d(m, n) for 0 <= n <= maxN; ranks satisfy |m| <= n.
class RankTables {
public:
    RankTables(int d, int maxN);

    int d() const { return d_; }
    int max_n() const { return max_n_; }
    const BigInt& count(int m, int n) const;
    BigInt& at(int m, int n);
    BigInt pbar(int n) const;
    /// Nbar_d(a, M, n): ranks congruent to a mod M.
    BigInt residue_count(int a, int M, int n) const;

    /// Rows "d,m,n,count" with a header, zero entries omitted.
    void write_csv(std::ostream& os) const;

    friend bool operator==(const RankTables& a, const RankTables& b);

private:
    int d_;
    int max_n_;
    std::vector<std::vector<BigInt>> rows_;  // rows_[n][m + n]
};

/// Generating-function route: inverse discrete Fourier transform of
/// O_d(zeta_K^j; q), K = 2 maxN + 3, grouped into Galois traces.
RankTables rank_tables(int d, int maxN);
/// Combinatorial route for d = 1 (rank) and d = 2 (M2-rank).
RankTables rank_tables_by_enumeration(int d, int maxN);
/// Shared, thread-safe cache of generating-function tables.
std::shared_ptr<const RankTables> cached_rank_tables(int d, int maxN);

/// sum_n (Nbar_d(a,M,n) - pbar(n)/M) q^n below `order`.
QSeries deviation_by_definition(int d, int a, int M, const Rational& order);

/// Generic parameters z', z'', z0 for the deviation formulas.
struct FormulaParams {
    Monomial zp;
    Monomial zpp;
    Monomial z0;
    std::string str() const;
};

/// zeta_p, zeta_p^2, zeta_p^3 for the first p in {7, 11, 13} not dividing d M.
FormulaParams default_params(int d, int M);

/// Which variant of the formula for d odd, a and M even to use.
enum class EvenEvenForm {
    /// Exponents and bases exactly as stated.
    Printed,
    /// Re-derived from the orthogonality lemma: every q-power scaled by d^2.
    Rescaled,
};

/// Dbar_d(a,M) + Dbar_d(a-1,M) from the Appell-Lerch formulas. Residues
/// outside the stated ranges are moved in by a -> M - a + 1 and periodicity.
QSeries deviation_pair_by_formula(int d, int a, int M, const FormulaParams& params, const Rational& order,
                                  EvenEvenForm form = EvenEvenForm::Rescaled);

/// The theorem case a pair falls into after reflection, or throws UnsupportedCase.
std::string pair_case(int d, int a, int M);

/// Dbar_d(a, M) through the telescoping pair sums (M odd) or the split
/// root-of-unity sum with O_d(-1;q) (M even).
QSeries single_deviation(int d, int a, int M, const FormulaParams& params, const Rational& order);

/// (1/M) sum_{k=1}^{M-1} O_d(zeta_M^k;q) zeta_M^{-kn}.
QSeries deviation_by_root_average(int d, int n, int M, const Rational& order);
/// The same sum for M even with the k = M/2 term split off and k, M-k paired.
QSeries deviation_by_paired_average(int d, int n, int M, const Rational& order);

}  // namespace qrank

#endif  // QRANK_OVERPARTITIONS_HPP
