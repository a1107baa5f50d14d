#pragma once

#include <fftw3.h>

#include <array>
#include <cmath>
#include <complex>
#include <cstring>
#include <memory>
#include <vector>

#include "pdfast/errors.hpp"
#include "pdfast/field.hpp"
#include "pdfast/grid.hpp"
#include "pdfast/kernel.hpp"

namespace pdfast {

namespace detail {

struct FftwBuffer {
    fftw_complex* ptr = nullptr;
    std::size_t n = 0;

    FftwBuffer() = default;
    explicit FftwBuffer(std::size_t count) : n(count) {
        ptr = fftw_alloc_complex(count);
        zero();
    }
    FftwBuffer(FftwBuffer&& o) noexcept : ptr(o.ptr), n(o.n) { o.ptr = nullptr; o.n = 0; }
    FftwBuffer& operator=(FftwBuffer&& o) noexcept {
        if (this != &o) {
            if (ptr) fftw_free(ptr);
            ptr = o.ptr;
            n = o.n;
            o.ptr = nullptr;
            o.n = 0;
        }
        return *this;
    }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;
    ~FftwBuffer() {
        if (ptr) fftw_free(ptr);
    }

    void zero() { std::memset(ptr, 0, n * sizeof(fftw_complex)); }
};

}  // namespace detail

/// Zero-padded transform workspace on the doubled lattice (2Nx x 2Ny [x 2Nz]).
/// Owns the FFT plans and the per-call scratch; one instance per concurrent
/// caller (plan creation is not thread-safe, execution on distinct buffers is).
template <int Dim>
class PadTransform {
  public:
    PadTransform(const IVec<Dim>& dims, int M) : dims_(dims), M_(M) {
        pn_ = 1;
        for (int d = 0; d < Dim; ++d) {
            if (dims[d] < M + 1)
                throw HorizonTooLargeForGrid("need at least M+1 nodes per axis for the embedding");
            pad_[d] = 2 * dims[d];
            pn_ *= static_cast<std::size_t>(pad_[d]);
        }
        scratch_ = detail::FftwBuffer(pn_);
        int n[Dim];
        for (int d = 0; d < Dim; ++d) n[d] = pad_[Dim - 1 - d];  // fftw: slowest axis first
        fwd_ = fftw_plan_dft(Dim, n, scratch_.ptr, scratch_.ptr, FFTW_FORWARD, FFTW_ESTIMATE);
        bwd_ = fftw_plan_dft(Dim, n, scratch_.ptr, scratch_.ptr, FFTW_BACKWARD, FFTW_ESTIMATE);
    }

    PadTransform(const PadTransform&) = delete;
    PadTransform& operator=(const PadTransform&) = delete;

    ~PadTransform() {
        fftw_destroy_plan(fwd_);
        fftw_destroy_plan(bwd_);
    }

    const IVec<Dim>& dims() const { return dims_; }
    const IVec<Dim>& padded_dims() const { return pad_; }
    std::size_t padded_size() const { return pn_; }
    int band_halfwidth() const { return M_; }

    std::size_t padded_lin(const IVec<Dim>& c) const {
        std::size_t idx = 0;
        for (int d = Dim - 1; d >= 0; --d) idx = idx * pad_[d] + c[d];
        return idx;
    }

    /// Real circulant embedding of one kernel stencil: entry at wrapped offset,
    /// zero across the middle gap. Axis index m holds offset m for m <= M and
    /// offset m - 2N for m >= 2N - M.
    std::vector<double> embed_real(const KernelStack<Dim>& K, int a, int b) const {
        std::vector<double> G(pn_, 0.0);
        G[0] = K.center(a, b);
        K.for_each_offset([&](const IVec<Dim>& off) {
            IVec<Dim> w{};
            for (int d = 0; d < Dim; ++d) w[d] = off[d] >= 0 ? off[d] : off[d] + pad_[d];
            G[padded_lin(w)] = K.at(a, b, off);
        });
        return G;
    }

    /// Cached forward transform of the embedded stencil.
    detail::FftwBuffer embed(const KernelStack<Dim>& K, int a, int b) {
        const std::vector<double> G = embed_real(K, a, b);
        detail::FftwBuffer out(pn_);
        for (std::size_t i = 0; i < pn_; ++i) {
            out.ptr[i][0] = G[i];
            out.ptr[i][1] = 0.0;
        }
        fftw_execute_dft(fwd_, out.ptr, out.ptr);
        return out;
    }

    /// Zero-pad a node field into the doubled lattice and transform it.
    void forward_field(const std::vector<double>& u, detail::FftwBuffer& out) {
        if (static_cast<index_t>(u.size()) != physical_size())
            throw ShapeMismatch("field length does not match the lattice");
        out.zero();
        visit_window([&](const IVec<Dim>& c, index_t p, std::size_t padded) {
            (void)c;
            out.ptr[padded][0] = u[p];
        });
        fftw_execute_dft(fwd_, out.ptr, out.ptr);
    }

    /// acc (+)= conj(G) o U elementwise. The kernel spectrum enters
    /// conjugated so that the product realizes the operator generated by the
    /// stencil (rows indexed by target node) for arbitrary stencils; the
    /// physical stencils are even, their spectra are real, and the plain
    /// product coincides.
    void hadamard(const detail::FftwBuffer& G, const detail::FftwBuffer& U,
                  detail::FftwBuffer& acc, bool accumulate) const {
        const fftw_complex* g = G.ptr;
        const fftw_complex* u = U.ptr;
        fftw_complex* h = acc.ptr;
        if (accumulate) {
            for (std::size_t i = 0; i < pn_; ++i) {
                const double gr = g[i][0], gi = g[i][1], ur = u[i][0], ui = u[i][1];
                h[i][0] += gr * ur + gi * ui;
                h[i][1] += gr * ui - gi * ur;
            }
        } else {
            // reads complete before writes, so acc may alias U
            for (std::size_t i = 0; i < pn_; ++i) {
                const double gr = g[i][0], gi = g[i][1], ur = u[i][0], ui = u[i][1];
                h[i][0] = gr * ur + gi * ui;
                h[i][1] = gr * ui - gi * ur;
            }
        }
    }

    /// Inverse transform and extraction of the physical window.
    /// Records the peak imaginary residue relative to the peak real value.
    void inverse_extract(detail::FftwBuffer& acc, std::vector<double>& f) {
        fftw_execute_dft(bwd_, acc.ptr, acc.ptr);
        const double scale = 1.0 / static_cast<double>(pn_);
        f.assign(static_cast<std::size_t>(physical_size()), 0.0);
        double imag_peak = 0.0, real_peak = 0.0;
        visit_window([&](const IVec<Dim>& c, index_t p, std::size_t padded) {
            (void)c;
            const double re = acc.ptr[padded][0] * scale;
            const double im = acc.ptr[padded][1] * scale;
            f[p] = re;
            real_peak = std::max(real_peak, std::abs(re));
            imag_peak = std::max(imag_peak, std::abs(im));
        });
        imag_residue_ = real_peak > 0.0 ? imag_peak / real_peak : imag_peak;
    }

    double last_imag_residue() const { return imag_residue_; }

    index_t physical_size() const {
        index_t n = 1;
        for (int d = 0; d < Dim; ++d) n *= dims_[d];
        return n;
    }

  private:
    template <class Fn>
    void visit_window(Fn&& fn) const {
        IVec<Dim> c{};
        index_t p = 0;
        if constexpr (Dim == 2) {
            for (c[1] = 0; c[1] < dims_[1]; ++c[1])
                for (c[0] = 0; c[0] < dims_[0]; ++c[0], ++p) fn(c, p, padded_lin(c));
        } else {
            for (c[2] = 0; c[2] < dims_[2]; ++c[2])
                for (c[1] = 0; c[1] < dims_[1]; ++c[1])
                    for (c[0] = 0; c[0] < dims_[0]; ++c[0], ++p) fn(c, p, padded_lin(c));
        }
    }

    IVec<Dim> dims_{};
    IVec<Dim> pad_{};
    int M_ = 0;
    std::size_t pn_ = 0;
    detail::FftwBuffer scratch_;
    fftw_plan fwd_ = nullptr;
    fftw_plan bwd_ = nullptr;
    double imag_residue_ = 0.0;
};

/// Spectral product with a single kernel stencil: f = A_hat u for one
/// component pair.
template <int Dim>
class Convolver {
  public:
    Convolver(const IVec<Dim>& dims, const KernelStack<Dim>& K, int a = 0, int b = 0)
        : tr_(dims, K.band_halfwidth()), u_(tr_.padded_size()) {
        spectral_ = tr_.embed(K, a, b);
    }

    void apply(const std::vector<double>& u, std::vector<double>& f) {
        tr_.forward_field(u, u_);
        tr_.hadamard(spectral_, u_, u_, false);
        tr_.inverse_extract(u_, f);
    }

    double last_imag_residue() const { return tr_.last_imag_residue(); }
    PadTransform<Dim>& transform() { return tr_; }

  private:
    PadTransform<Dim> tr_;
    detail::FftwBuffer spectral_;
    detail::FftwBuffer u_;
};

/// The fast force evaluator: cached spectra of all kernel stencils plus the
/// per-step padded transforms. One forward transform per displacement
/// component and one inverse per force component; the component products are
/// accumulated in frequency space.
template <int Dim>
class FastForce {
  public:
    FastForce(const Grid<Dim>& grid, const Horizon& hz, const KernelStack<Dim>& K)
        : tr_(grid.dims, hz.M) {
        for (int a = 0; a < Dim; ++a)
            for (int b = a; b < Dim; ++b)
                spectra_[pair_index<Dim>(a, b)] = tr_.embed(K, a, b);
        for (auto& b : uhat_) b = detail::FftwBuffer(tr_.padded_size());
        acc_ = detail::FftwBuffer(tr_.padded_size());
    }

    /// f = A_hat u over all components (the uncorrected force).
    void apply(const VecField<Dim>& u, VecField<Dim>& f) {
        for (int b = 0; b < Dim; ++b) tr_.forward_field(u.c[b], uhat_[b]);
        double residue = 0.0;
        for (int a = 0; a < Dim; ++a) {
            for (int b = 0; b < Dim; ++b)
                tr_.hadamard(spectra_[pair_index<Dim>(a, b)], uhat_[b], acc_, b != 0);
            tr_.inverse_extract(acc_, f.c[a]);
            residue = std::max(residue, tr_.last_imag_residue());
        }
        imag_residue_ = residue;
    }

    double last_imag_residue() const { return imag_residue_; }

    std::size_t footprint_bytes() const {
        const std::size_t per = tr_.padded_size() * sizeof(fftw_complex);
        return per * (n_pairs<Dim> + Dim + 2);  // spectra + u-hats + acc + scratch
    }

  private:
    PadTransform<Dim> tr_;
    std::array<detail::FftwBuffer, n_pairs<Dim>> spectra_{};
    std::array<detail::FftwBuffer, Dim> uhat_{};
    detail::FftwBuffer acc_;
    double imag_residue_ = 0.0;
};

}  // namespace pdfast
