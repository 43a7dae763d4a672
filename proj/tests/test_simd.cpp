#include <doctest.h>

#include <random>
#include <vector>

#include "mbrank/elimination.hpp"
#include "mbrank/kernel.hpp"
#include "mbrank/measures.hpp"
#include "mbrank/simd/kernels.hpp"
#include "mbrank/synthetic.hpp"
#include "oracles.hpp"

using namespace mbrank;

namespace {

std::vector<const simd::Kernels*> vector_tables() {
  std::vector<const simd::Kernels*> out;
  for (simd::Isa isa : {simd::Isa::Avx2, simd::Isa::Neon})
    if (const auto* k = simd::kernels_for(isa)) out.push_back(k);
  return out;
}

std::vector<double> randv(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

// Restores the startup ISA when a test forces another one.
struct IsaGuard {
  simd::Isa saved = simd::active().isa;
  ~IsaGuard() { simd::set_active(saved); }
};

}  // namespace

TEST_CASE("scalar table is always available and default is the widest") {
  CHECK(simd::available(simd::Isa::Scalar));
  CHECK(simd::kernels_for(simd::Isa::Scalar) == &simd::scalar_kernels());
  MESSAGE("active ISA: " << std::string(simd::active().name));
}

TEST_CASE("vector kernels match the scalar reference on every length and tail") {
  const auto& ref = simd::scalar_kernels();
  std::mt19937_64 rng(7);
  for (const auto* k : vector_tables()) {
    CAPTURE(k->name);
    for (std::size_t n = 0; n <= 67; ++n) {
      CAPTURE(n);
      const auto a = randv(n, rng), b = randv(n, rng), c = randv(n, rng), d = randv(n, rng), e = randv(n, rng);
      const double tol = 1e-13 * (static_cast<double>(n) + 1.0);

      CHECK(k->dot(a.data(), b.data(), n) == doctest::Approx(ref.dot(a.data(), b.data(), n)).epsilon(tol));
      CHECK(k->sum(a.data(), n) == doctest::Approx(ref.sum(a.data(), n)).epsilon(tol));

      double got[4], want[4];
      k->dot4(a.data(), b.data(), c.data(), d.data(), e.data(), n, got);
      ref.dot4(a.data(), b.data(), c.data(), d.data(), e.data(), n, want);
      for (int i = 0; i < 4; ++i) CHECK(std::abs(got[i] - want[i]) <= tol * 8);

      auto y1 = c, y2 = c;
      k->axpy(0.75, a.data(), y1.data(), n);
      ref.axpy(0.75, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * 8);

      y1 = c, y2 = c;
      k->sqdiff_acc(0.3, a.data(), y1.data(), n);
      ref.sqdiff_acc(0.3, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-14);

      y1 = c, y2 = c;
      k->sub_shift(a.data(), -1.25, y1.data(), n);
      ref.sub_shift(a.data(), -1.25, y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(y1[i] == y2[i]);
    }
  }
}

TEST_CASE("forcing an ISA changes the active table and unknown names are rejected") {
  IsaGuard guard;
  CHECK(simd::set_active(simd::Isa::Scalar));
  CHECK(simd::active().isa == simd::Isa::Scalar);
  simd::Isa isa;
  CHECK_FALSE(simd::parse_isa("sse9", isa));
  REQUIRE(simd::parse_isa("avx2", isa));
  CHECK(isa == simd::Isa::Avx2);
}

TEST_CASE("Gram, measures and elimination agree between scalar and vector paths") {
  const auto tables = vector_tables();
  if (tables.empty()) return;
  IsaGuard guard;

  SynthConfig cfg;
  cfg.n_samples = 120;
  cfg.seed = 11;
  const auto ds = gen_mb_dataset(cfg);
  const std::vector<std::size_t> cols{0, 1, 2, 3, 4, 5};

  for (KernelFamily fam : {KernelFamily::Linear, KernelFamily::Gaussian}) {
    KernelSpec spec;
    spec.family = fam;

    simd::set_active(simd::Isa::Scalar);
    const GramMatrix g_ref = center(compute_gram(ds.data, cols, spec));
    const double m1_ref = evaluate(MeasureKind::M1, ds.data, kSynthTarget, cols, spec);
    const double m2_ref = evaluate(MeasureKind::M2, ds.data, kSynthTarget, cols, spec);
    const double h_ref = evaluate(MeasureKind::Hsic, ds.data, kSynthTarget, cols, spec);
    const auto order_ref = backward_eliminate(ds.data, kSynthTarget, MeasureKind::M1, spec).order;

    for (const auto* k : tables) {
      simd::set_active(k->isa);
      const GramMatrix g = center(compute_gram(ds.data, cols, spec));
      for (std::size_t i = 0; i < g.entries().size(); ++i)
        CHECK(std::abs(g.entries()[i] - g_ref.entries()[i]) <= 1e-10);
      CHECK(oracle::rel_close(evaluate(MeasureKind::M1, ds.data, kSynthTarget, cols, spec), m1_ref, 1e-8));
      CHECK(oracle::rel_close(evaluate(MeasureKind::M2, ds.data, kSynthTarget, cols, spec), m2_ref, 1e-8));
      CHECK(oracle::rel_close(evaluate(MeasureKind::Hsic, ds.data, kSynthTarget, cols, spec), h_ref, 1e-8));
      CHECK(backward_eliminate(ds.data, kSynthTarget, MeasureKind::M1, spec).order == order_ref);
    }
  }
}
