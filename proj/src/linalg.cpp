#include "turinv/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace turinv {

bool solve_linear(Matrix a, std::vector<double> b, std::vector<double>& x) {
    const int n = a.rows;
    if (n != a.cols || static_cast<int>(b.size()) != n) return false;

    for (int col = 0; col < n; ++col) {
        int pivot = col;
        for (int i = col + 1; i < n; ++i)
            if (std::abs(a.at(i, col)) > std::abs(a.at(pivot, col))) pivot = i;
        if (std::abs(a.at(pivot, col)) < 1e-300) return false;
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a.at(pivot, j), a.at(col, j));
            std::swap(b[pivot], b[col]);
        }
        for (int i = col + 1; i < n; ++i) {
            const double f = a.at(i, col) / a.at(col, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) a.at(i, j) -= f * a.at(col, j);
            b[i] -= f * b[col];
        }
    }
    x.assign(n, 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double acc = b[i];
        for (int j = i + 1; j < n; ++j) acc -= a.at(i, j) * x[j];
        x[i] = acc / a.at(i, i);
    }
    return true;
}

std::vector<double> symmetric_eigenvalues(Matrix a) {
    const int n = a.rows;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) off += a.at(i, j) * a.at(i, j);
        if (off < 1e-30) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double theta = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double cos_v = 1.0 / std::sqrt(t * t + 1.0);
                const double sin_v = t * cos_v;
                for (int i = 0; i < n; ++i) {
                    const double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = cos_v * aip - sin_v * aiq;
                    a.at(i, q) = sin_v * aip + cos_v * aiq;
                }
                for (int j = 0; j < n; ++j) {
                    const double apj = a.at(p, j), aqj = a.at(q, j);
                    a.at(p, j) = cos_v * apj - sin_v * aqj;
                    a.at(q, j) = sin_v * apj + cos_v * aqj;
                }
            }
        }
    }
    std::vector<double> eig(n);
    for (int i = 0; i < n; ++i) eig[i] = a.at(i, i);
    std::sort(eig.begin(), eig.end(), std::greater<>());
    return eig;
}

std::vector<double> singular_values(const Matrix& a) {
    // one-sided Jacobi: rotate column pairs until mutually orthogonal, then
    // read the singular values off the column norms. Keeps tiny singular
    // values meaningful, unlike forming A^T A.
    Matrix w = a;
    if (w.rows < w.cols) {  // transpose: singular values are shared
        Matrix t(w.cols, w.rows);
        for (int i = 0; i < w.rows; ++i)
            for (int j = 0; j < w.cols; ++j) t.at(j, i) = w.at(i, j);
        w = std::move(t);
    }
    const int m = w.rows, n = w.cols;
    for (int sweep = 0; sweep < 60; ++sweep) {
        bool rotated = false;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double app = 0.0, aqq = 0.0, apq = 0.0;
                for (int i = 0; i < m; ++i) {
                    app += w.at(i, p) * w.at(i, p);
                    aqq += w.at(i, q) * w.at(i, q);
                    apq += w.at(i, p) * w.at(i, q);
                }
                if (std::abs(apq) <= 1e-30 ||
                    std::abs(apq) <= 1e-16 * std::sqrt(app * aqq))
                    continue;
                const double theta = (aqq - app) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) +
                                  std::sqrt(theta * theta + 1.0));
                const double cos_v = 1.0 / std::sqrt(t * t + 1.0);
                const double sin_v = t * cos_v;
                for (int i = 0; i < m; ++i) {
                    const double vp = w.at(i, p), vq = w.at(i, q);
                    w.at(i, p) = cos_v * vp - sin_v * vq;
                    w.at(i, q) = sin_v * vp + cos_v * vq;
                }
                rotated = true;
            }
        }
        if (!rotated) break;
    }
    std::vector<double> sv(n, 0.0);
    for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int i = 0; i < m; ++i) acc += w.at(i, j) * w.at(i, j);
        sv[j] = std::sqrt(acc);
    }
    std::sort(sv.begin(), sv.end(), std::greater<>());
    return sv;
}

}  // namespace turinv
