#include "fracpm/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "fracpm/error.hpp"

namespace fracpm {

namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan backward;
};

// FFTW's planner is not re-entrant; execution of an existing plan on new
// arrays is. Plans live for the lifetime of the process.
PlanPair cached_plans(int dim, int n) {
  static std::mutex mutex;
  static std::map<std::pair<int, int>, PlanPair> cache;
  const std::lock_guard lock(mutex);
  auto it = cache.find({dim, n});
  if (it != cache.end()) return it->second;

  const std::size_t total = dim == 1 ? static_cast<std::size_t>(n) : static_cast<std::size_t>(n) * n;
  auto* a = fftw_alloc_complex(total);
  auto* b = fftw_alloc_complex(total);
  PlanPair plans{};
  // FFTW_ESTIMATE keeps the algorithm choice (and hence the bits) stable run to run.
  if (dim == 1) {
    plans.forward = fftw_plan_dft_1d(n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plans.backward = fftw_plan_dft_1d(n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    plans.forward = fftw_plan_dft_2d(n, n, a, b, FFTW_FORWARD, FFTW_ESTIMATE);
    plans.backward = fftw_plan_dft_2d(n, n, a, b, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  fftw_free(a);
  fftw_free(b);
  cache.emplace(std::make_pair(dim, n), plans);
  return plans;
}

}  // namespace

struct FftPlan::Impl {
  PeriodicGrid grid;
  PlanPair plans;
  fftw_complex* in;
  fftw_complex* out;
  // (-1)^(k1+k2): the phase from x_j = -1 + j h.
  std::vector<double> phase;
  double scale;

  explicit Impl(const PeriodicGrid& g)
      : grid(g),
        plans(cached_plans(g.dim(), static_cast<int>(g.n()))),
        in(fftw_alloc_complex(g.size())),
        out(fftw_alloc_complex(g.size())),
        phase(g.size()),
        scale(1.0 / static_cast<double>(g.size())) {
    const auto n = g.n();
    auto parity = [&](std::size_t j) { return g.wavenumber(j) % 2 == 0 ? 1.0 : -1.0; };
    if (g.dim() == 1) {
      for (std::size_t j = 0; j < n; ++j) phase[j] = parity(j);
    } else {
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) phase[a * n + b] = parity(a) * parity(b);
    }
  }

  ~Impl() {
    fftw_free(in);
    fftw_free(out);
  }
  Impl(const Impl&) = delete;
  Impl& operator=(const Impl&) = delete;
};

FftPlan::FftPlan(const PeriodicGrid& grid) : impl_(std::make_unique<Impl>(grid)) {}
FftPlan::~FftPlan() = default;
FftPlan::FftPlan(FftPlan&&) noexcept = default;
FftPlan& FftPlan::operator=(FftPlan&&) noexcept = default;

const PeriodicGrid& FftPlan::grid() const noexcept { return impl_->grid; }

void FftPlan::forward(std::span<const double> in, std::span<std::complex<double>> out) {
  auto& m = *impl_;
  const auto total = m.grid.size();
  if (in.size() != total || out.size() != total) {
    throw Error(ErrorKind::InvalidArgument, "transform size does not match grid");
  }
  for (std::size_t i = 0; i < total; ++i) {
    m.in[i][0] = in[i];
    m.in[i][1] = 0.0;
  }
  fftw_execute_dft(m.plans.forward, m.in, m.out);
  for (std::size_t i = 0; i < total; ++i) {
    const double s = m.phase[i] * m.scale;
    out[i] = {m.out[i][0] * s, m.out[i][1] * s};
  }
}

void FftPlan::forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  auto& m = *impl_;
  const auto total = m.grid.size();
  if (in.size() != total || out.size() != total) {
    throw Error(ErrorKind::InvalidArgument, "transform size does not match grid");
  }
  for (std::size_t i = 0; i < total; ++i) {
    m.in[i][0] = in[i].real();
    m.in[i][1] = in[i].imag();
  }
  fftw_execute_dft(m.plans.forward, m.in, m.out);
  for (std::size_t i = 0; i < total; ++i) {
    const double s = m.phase[i] * m.scale;
    out[i] = {m.out[i][0] * s, m.out[i][1] * s};
  }
}

void FftPlan::inverse(std::span<const std::complex<double>> in, std::span<double> out) {
  auto& m = *impl_;
  const auto total = m.grid.size();
  if (in.size() != total || out.size() != total) {
    throw Error(ErrorKind::InvalidArgument, "transform size does not match grid");
  }
  for (std::size_t i = 0; i < total; ++i) {
    m.in[i][0] = in[i].real() * m.phase[i];
    m.in[i][1] = in[i].imag() * m.phase[i];
  }
  fftw_execute_dft(m.plans.backward, m.in, m.out);
  for (std::size_t i = 0; i < total; ++i) out[i] = m.out[i][0];
}

void FftPlan::inverse(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  auto& m = *impl_;
  const auto total = m.grid.size();
  if (in.size() != total || out.size() != total) {
    throw Error(ErrorKind::InvalidArgument, "transform size does not match grid");
  }
  for (std::size_t i = 0; i < total; ++i) {
    m.in[i][0] = in[i].real() * m.phase[i];
    m.in[i][1] = in[i].imag() * m.phase[i];
  }
  fftw_execute_dft(m.plans.backward, m.in, m.out);
  for (std::size_t i = 0; i < total; ++i) out[i] = {m.out[i][0], m.out[i][1]};
}

}  // namespace fracpm
