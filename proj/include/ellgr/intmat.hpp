#ifndef ELLGR_INTMAT_HPP
#define ELLGR_INTMAT_HPP

#include <gmpxx.h>
#include <vector>

#include "ellgr/prec.hpp"

namespace ellgr {

// Dense exact integer matrix; all zlattice arithmetic stays exact.
class IntMat {
  public:
    IntMat() : rows_(0), cols_(0) {}
    IntMat(int rows, int cols) : rows_(rows), cols_(cols), a_((size_t)rows * cols) {}

    static IntMat identity(int n)
    {
        IntMat m(n, n);
        for (int i = 0; i < n; i++) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpz_class& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
    const mpz_class& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

    IntMat transpose() const;
    friend IntMat operator*(const IntMat& x, const IntMat& y);
    bool operator==(const IntMat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    void swap_rows(int i, int j);
    void swap_cols(int i, int j);
    // row i -= q * row j ; col i -= q * col j
    void addmul_row(int i, int j, const mpz_class& q);
    void addmul_col(int i, int j, const mpz_class& q);
    void negate_row(int i);
    void negate_col(int i);

  private:
    int rows_, cols_;
    std::vector<mpz_class> a_;
};

mpz_class det(const IntMat& m);          // fraction-free (Bareiss)
IntMat adjugate(const IntMat& m);        // adj(m) with m * adj(m) = det(m) I
mpz_class content(const std::vector<mpz_class>& v);

struct SmithDecomposition {
    IntMat U, V;                      // unimodular, U*A*V = diag(divisors)
    std::vector<mpz_class> divisors;  // non-negative, d_i | d_{i+1}
};

// Smith normal form of a square nonsingular matrix.  Pivoting always takes the
// smallest nonzero |entry| to limit coefficient growth.
SmithDecomposition smith_normal_form(const IntMat& A);

// Dense exact rational matrix, used for change of basis and membership tests.
class RatMat {
  public:
    RatMat() : rows_(0), cols_(0) {}
    RatMat(int rows, int cols) : rows_(rows), cols_(cols), a_((size_t)rows * cols) {}

    static RatMat identity(int n)
    {
        RatMat m(n, n);
        for (int i = 0; i < n; i++) m.at(i, i) = 1;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpq_class& at(int i, int j) { return a_[(size_t)i * cols_ + j]; }
    const mpq_class& at(int i, int j) const { return a_[(size_t)i * cols_ + j]; }

    RatMat transpose() const;
    friend RatMat operator*(const RatMat& x, const RatMat& y);

  private:
    int rows_, cols_;
    std::vector<mpq_class> a_;
};

mpq_class det(const RatMat& m);
RatMat inverse(const RatMat& m);                       // throws on singular
// solve A x = b, A square nonsingular
std::vector<mpq_class> solve(const RatMat& A, const std::vector<mpq_class>& b);
int rank(RatMat m);

} // namespace ellgr

#endif
