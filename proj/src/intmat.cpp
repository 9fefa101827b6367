#include "ellgr/intmat.hpp"

namespace ellgr {

IntMat IntMat::transpose() const
{
    IntMat t(cols_, rows_);
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++) t.at(j, i) = at(i, j);
    return t;
}

IntMat operator*(const IntMat& x, const IntMat& y)
{
    if (x.cols_ != y.rows_) throw domain_error("IntMat: dimension mismatch");
    IntMat r(x.rows_, y.cols_);
    mpz_class acc;
    for (int i = 0; i < x.rows_; i++)
        for (int j = 0; j < y.cols_; j++) {
            acc = 0;
            for (int k = 0; k < x.cols_; k++) acc += x.at(i, k) * y.at(k, j);
            r.at(i, j) = acc;
        }
    return r;
}

void IntMat::swap_rows(int i, int j)
{
    if (i == j) return;
    for (int k = 0; k < cols_; k++) std::swap(at(i, k), at(j, k));
}
void IntMat::swap_cols(int i, int j)
{
    if (i == j) return;
    for (int k = 0; k < rows_; k++) std::swap(at(k, i), at(k, j));
}
void IntMat::addmul_row(int i, int j, const mpz_class& q)
{
    for (int k = 0; k < cols_; k++) at(i, k) -= q * at(j, k);
}
void IntMat::addmul_col(int i, int j, const mpz_class& q)
{
    for (int k = 0; k < rows_; k++) at(k, i) -= q * at(k, j);
}
void IntMat::negate_row(int i)
{
    for (int k = 0; k < cols_; k++) at(i, k) = -at(i, k);
}
void IntMat::negate_col(int i)
{
    for (int k = 0; k < rows_; k++) at(k, i) = -at(k, i);
}

mpz_class det(const IntMat& m)
{
    if (m.rows() != m.cols()) throw domain_error("det: not square");
    int n = m.rows();
    if (n == 0) return 1;
    IntMat a = m;
    mpz_class prev(1);
    int sign = 1;
    for (int k = 0; k < n - 1; k++) {
        if (a.at(k, k) == 0) {
            int p = -1;
            for (int i = k + 1; i < n; i++)
                if (a.at(i, k) != 0) { p = i; break; }
            if (p < 0) return 0;
            a.swap_rows(k, p);
            sign = -sign;
        }
        for (int i = k + 1; i < n; i++)
            for (int j = k + 1; j < n; j++) {
                mpz_class t = a.at(i, j) * a.at(k, k) - a.at(i, k) * a.at(k, j);
                mpz_divexact(a.at(i, j).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
            }
        prev = a.at(k, k);
    }
    return sign > 0 ? a.at(n - 1, n - 1) : mpz_class(-a.at(n - 1, n - 1));
}

IntMat adjugate(const IntMat& m)
{
    if (m.rows() != m.cols()) throw domain_error("adjugate: not square");
    int n = m.rows();
    IntMat adj(n, n);
    if (n == 1) { adj.at(0, 0) = 1; return adj; }
    IntMat minor(n - 1, n - 1);
    for (int i = 0; i < n; i++)
        for (int j = 0; j < n; j++) {
            for (int r = 0, rr = 0; r < n; r++) {
                if (r == i) continue;
                for (int c = 0, cc = 0; c < n; c++) {
                    if (c == j) continue;
                    minor.at(rr, cc) = m.at(r, c);
                    cc++;
                }
                rr++;
            }
            mpz_class d = det(minor);
            adj.at(j, i) = ((i + j) % 2 == 0) ? d : mpz_class(-d);
        }
    return adj;
}

mpz_class content(const std::vector<mpz_class>& v)
{
    mpz_class g(0);
    for (const auto& x : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

namespace {

// quotient minimizing |a - q b|
mpz_class nearest_quotient(const mpz_class& a, const mpz_class& b)
{
    mpz_class q, r;
    mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    mpz_class babs = abs(b);
    if (r * 2 > babs) q += 1;
    return q;
}

} // namespace

SmithDecomposition smith_normal_form(const IntMat& A)
{
    if (A.rows() != A.cols()) throw domain_error("smith_normal_form: not square");
    int n = A.rows();
    if (det(A) == 0) throw domain_error("smith_normal_form: singular matrix");

    SmithDecomposition s;
    s.U = IntMat::identity(n);
    s.V = IntMat::identity(n);
    IntMat a = A;

    for (int k = 0; k < n; k++) {
        for (;;) {
            // smallest nonzero entry in the trailing block to (k,k)
            int bi = -1, bj = -1;
            mpz_class best;
            for (int i = k; i < n; i++)
                for (int j = k; j < n; j++) {
                    if (a.at(i, j) == 0) continue;
                    mpz_class v = abs(a.at(i, j));
                    if (bi < 0 || v < best) { best = v; bi = i; bj = j; }
                }
            if (bi < 0) throw domain_error("smith_normal_form: unexpected zero block");
            if (bi != k) { a.swap_rows(k, bi); s.U.swap_rows(k, bi); }
            if (bj != k) { a.swap_cols(k, bj); s.V.swap_cols(k, bj); }

            bool clean = true;
            for (int i = k + 1; i < n; i++) {
                if (a.at(i, k) == 0) continue;
                mpz_class q = nearest_quotient(a.at(i, k), a.at(k, k));
                if (q != 0) { a.addmul_row(i, k, q); s.U.addmul_row(i, k, q); }
                if (a.at(i, k) != 0) clean = false;
            }
            for (int j = k + 1; j < n; j++) {
                if (a.at(k, j) == 0) continue;
                mpz_class q = nearest_quotient(a.at(k, j), a.at(k, k));
                if (q != 0) { a.addmul_col(j, k, q); s.V.addmul_col(j, k, q); }
                if (a.at(k, j) != 0) clean = false;
            }
            if (!clean) continue;

            // force divisibility of the trailing block by the pivot
            bool divisible = true;
            for (int i = k + 1; i < n && divisible; i++)
                for (int j = k + 1; j < n && divisible; j++)
                    if (a.at(i, j) % a.at(k, k) != 0) {
                        a.addmul_row(k, i, mpz_class(-1)); // row_k += row_i
                        s.U.addmul_row(k, i, mpz_class(-1));
                        divisible = false;
                    }
            if (divisible) break;
        }
        if (a.at(k, k) < 0) { a.negate_row(k); s.U.negate_row(k); }
    }

    s.divisors.resize(n);
    for (int k = 0; k < n; k++) s.divisors[k] = a.at(k, k);
    return s;
}

RatMat RatMat::transpose() const
{
    RatMat t(cols_, rows_);
    for (int i = 0; i < rows_; i++)
        for (int j = 0; j < cols_; j++) t.at(j, i) = at(i, j);
    return t;
}

RatMat operator*(const RatMat& x, const RatMat& y)
{
    if (x.cols_ != y.rows_) throw domain_error("RatMat: dimension mismatch");
    RatMat r(x.rows_, y.cols_);
    mpq_class acc;
    for (int i = 0; i < x.rows_; i++)
        for (int j = 0; j < y.cols_; j++) {
            acc = 0;
            for (int k = 0; k < x.cols_; k++) acc += x.at(i, k) * y.at(k, j);
            acc.canonicalize();
            r.at(i, j) = acc;
        }
    return r;
}

namespace {

// Gauss-Jordan on [m | rhs]; returns rank, m reduced in place
int gauss_jordan(RatMat& m, RatMat* rhs)
{
    int rank = 0;
    int rows = m.rows(), cols = m.cols();
    for (int col = 0; col < cols && rank < rows; col++) {
        int piv = -1;
        for (int i = rank; i < rows; i++)
            if (m.at(i, col) != 0) { piv = i; break; }
        if (piv < 0) continue;
        for (int j = 0; j < cols; j++) std::swap(m.at(piv, j), m.at(rank, j));
        if (rhs)
            for (int j = 0; j < rhs->cols(); j++) std::swap(rhs->at(piv, j), rhs->at(rank, j));
        mpq_class inv = 1 / m.at(rank, col);
        for (int j = 0; j < cols; j++) m.at(rank, j) *= inv;
        if (rhs)
            for (int j = 0; j < rhs->cols(); j++) rhs->at(rank, j) *= inv;
        for (int i = 0; i < rows; i++) {
            if (i == rank || m.at(i, col) == 0) continue;
            mpq_class f = m.at(i, col);
            for (int j = 0; j < cols; j++) m.at(i, j) -= f * m.at(rank, j);
            if (rhs)
                for (int j = 0; j < rhs->cols(); j++) rhs->at(i, j) -= f * rhs->at(rank, j);
        }
        rank++;
    }
    return rank;
}

} // namespace

mpq_class det(const RatMat& m)
{
    if (m.rows() != m.cols()) throw domain_error("det: not square");
    int n = m.rows();
    RatMat a = m;
    mpq_class d(1);
    for (int k = 0; k < n; k++) {
        int piv = -1;
        for (int i = k; i < n; i++)
            if (a.at(i, k) != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != k) {
            for (int j = 0; j < n; j++) std::swap(a.at(piv, j), a.at(k, j));
            d = -d;
        }
        d *= a.at(k, k);
        mpq_class inv = 1 / a.at(k, k);
        for (int i = k + 1; i < n; i++) {
            if (a.at(i, k) == 0) continue;
            mpq_class f = a.at(i, k) * inv;
            for (int j = k; j < n; j++) a.at(i, j) -= f * a.at(k, j);
        }
    }
    return d;
}

RatMat inverse(const RatMat& m)
{
    if (m.rows() != m.cols()) throw domain_error("inverse: not square");
    RatMat a = m;
    RatMat inv = RatMat::identity(m.rows());
    if (gauss_jordan(a, &inv) != m.rows()) throw domain_error("inverse: singular matrix");
    return inv;
}

std::vector<mpq_class> solve(const RatMat& A, const std::vector<mpq_class>& b)
{
    if (A.rows() != A.cols() || (int)b.size() != A.rows())
        throw domain_error("solve: dimension mismatch");
    RatMat a = A;
    RatMat rhs(A.rows(), 1);
    for (int i = 0; i < A.rows(); i++) rhs.at(i, 0) = b[i];
    if (gauss_jordan(a, &rhs) != A.rows()) throw domain_error("solve: singular matrix");
    std::vector<mpq_class> x(A.rows());
    for (int i = 0; i < A.rows(); i++) x[i] = rhs.at(i, 0);
    return x;
}

int rank(RatMat m)
{
    return gauss_jordan(m, nullptr);
}

} // namespace ellgr
