// linalg.hpp — dense symmetric eigensolve, LAPACK dsyevd when available
// (divide and conquer; Eigen's tridiagonal QR is noticeably slower past
// dimension ~1000), Eigen fallback otherwise.

#pragma once

#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#ifdef DIRACBATH_USE_LAPACK
extern "C" void dsyevd_(const char* jobz, const char* uplo, const int* n, double* a,
                        const int* lda, double* w, double* work, const int* lwork,
                        int* iwork, const int* liwork, int* info);
#endif

namespace diracbath {

struct EighResult {
    Eigen::VectorXd values;
    Eigen::MatrixXd vectors;  // columns
};

inline EighResult eigh(const Eigen::MatrixXd& H) {
    if (H.rows() != H.cols()) throw std::invalid_argument("eigh: square matrix required");
#ifdef DIRACBATH_USE_LAPACK
    const int n = int(H.rows());
    EighResult r;
    r.vectors = H;  // column-major, overwritten with eigenvectors
    r.values.resize(n);
    int lwork = -1, liwork = -1, info = 0;
    double wq = 0.0;
    int iq = 0;
    dsyevd_("V", "L", &n, r.vectors.data(), &n, r.values.data(), &wq, &lwork, &iq, &liwork, &info);
    lwork = int(wq);
    liwork = iq;
    std::vector<double> work(std::size_t(lwork));
    std::vector<int> iwork(std::size_t(liwork));
    dsyevd_("V", "L", &n, r.vectors.data(), &n, r.values.data(), work.data(), &lwork,
            iwork.data(), &liwork, &info);
    if (info != 0) throw std::runtime_error("eigh: dsyevd failed, info=" + std::to_string(info));
    return r;
#else
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    if (es.info() != Eigen::Success) throw std::runtime_error("eigh: eigensolver failure");
    return {es.eigenvalues(), es.eigenvectors()};
#endif
}

}  // namespace diracbath
