#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "mixtype/curvature.hpp"
#include "mixtype/gallery.hpp"

using namespace mixtype;

namespace {

const SurfaceDef& fK() {
  static const SurfaceDef s = gallery::make_surface(gallery::GalleryId::fK());
  return s;
}

SurfaceDef scalar_graph(ScalarGraph g) { return graph_to_surface(std::move(g)); }

} // namespace

TEST(FirstForm, ClosedFormExamples) {
  const SurfaceDef z = gallery::make_surface(gallery::GalleryId::fZ());
  const FundamentalData dz = first_fundamental(z.space, eval_jet(z, {0.3, 0.2}));
  EXPECT_NEAR(dz.g11, std::cos(0.4), 1e-12);
  EXPECT_NEAR(dz.g11, 0.921061, 1e-6);
  EXPECT_NEAR(dz.g12, 0.0, 1e-14);
  EXPECT_NEAR(dz.g22, 1.0, 1e-14);

  const SurfaceDef a = gallery::make_surface(gallery::GalleryId::fAds(1.0));
  const FundamentalData da = first_fundamental(a.space, eval_jet(a, {0.5, 0.3}));
  const double ref = (std::cosh(2.0) - std::cosh(0.6)) / (2 * std::sinh(1.0) * std::sinh(1.0));
  EXPECT_NEAR(da.g11, ref, 1e-12);
  EXPECT_NEAR(da.g11, 0.932856, 1e-6);
  EXPECT_NEAR(da.g12, 0.0, 1e-13);
  EXPECT_NEAR(da.g22, 1.0, 1e-13);
}

TEST(FirstForm, GraphBeta) {
  // B = sech^4 y (cosh^2 y - x^2) = -3 at (2, 0)
  const FundamentalData d = first_fundamental(fK().space, eval_jet(fK(), {2, 0}));
  EXPECT_NEAR(d.beta, -3.0, 1e-14);
  EXPECT_EQ(classify(d), PointCausality::timelike);
  EXPECT_EQ(classify(first_fundamental(fK().space, eval_jet(fK(), {0.5, 0}))), PointCausality::spacelike);
  EXPECT_EQ(classify(first_fundamental(fK().space, eval_jet(fK(), {1, 0}))), PointCausality::degenerate);
}

TEST(Normal, Examples) {
  const SurfaceDef flat = scalar_graph([](ParamPoint) { return ScalarJet2::constant(0.0); });
  const AmbientVector n0 = unit_normal(flat.space, eval_jet(flat, {0.3, 0.4}));
  EXPECT_NEAR(std::abs(n0[0]), 1.0, 1e-15);
  EXPECT_NEAR(n0[1] * n0[1] + n0[2] * n0[2], 0.0, 1e-30);

  const AmbientVector n = unit_normal(fK().space, eval_jet(fK(), {2, 0}));
  const double s = n[0] > 0 ? 1.0 : -1.0;
  EXPECT_NEAR(n[0], s / std::sqrt(3.0), 1e-14);
  EXPECT_NEAR(n[1], 0.0, 1e-14);
  EXPECT_NEAR(n[2], 2 * s / std::sqrt(3.0), 1e-14);

  EXPECT_THROW(unit_normal(fK().space, eval_jet(fK(), {1, 0})), DegenerateMetricError);
}

TEST(Normal, GraphFormulaAndOrthogonality) {
  std::mt19937_64 g(3);
  std::uniform_real_distribution<double> U(-2, 2);
  for (int k = 0; k < 100; ++k) {
    const ParamPoint p{U(g), U(g)};
    const Jet2 j = eval_jet(fK(), p);
    const FundamentalData d = first_fundamental(fK().space, j);
    if (is_degenerate(d)) continue;
    const AmbientVector n = unit_normal(fK().space, j);
    const ScalarJet2 s = graph_scalar_jet(fK(), p);
    const double r = 1.0 / std::sqrt(std::abs(d.beta));
    const double sign = n[0] > 0 ? 1.0 : -1.0;
    EXPECT_NEAR(n[0], sign * r, 1e-10 * r);
    EXPECT_NEAR(n[1], sign * r * s.fx, 1e-10 * r);
    EXPECT_NEAR(n[2], sign * r * s.fy, 1e-10 * r);
    EXPECT_NEAR(inner(fK().space, n, j.fu), 0.0, 1e-12 * r);
    EXPECT_NEAR(inner(fK().space, n, j.fv), 0.0, 1e-12 * r);
  }
}

TEST(Normal, CurvedFormsTangentToQuadric) {
  for (const auto& id : {gallery::GalleryId::fZ(), gallery::GalleryId::fAds(1.0)}) {
    const SurfaceDef s = gallery::make_surface(id);
    const Jet2 j = eval_jet(s, {0.4, 0.3});
    const AmbientVector n = unit_normal(s.space, j);
    EXPECT_NEAR(inner(s.space, n, j.pos), 0.0, 1e-12);
    EXPECT_NEAR(inner(s.space, n, j.fu), 0.0, 1e-12);
    EXPECT_NEAR(inner(s.space, n, j.fv), 0.0, 1e-12);
    EXPECT_NEAR(std::abs(inner(s.space, n, n)), 1.0, 1e-12);
  }
}

TEST(SecondForm, Examples) {
  const SurfaceDef flat = scalar_graph([](ParamPoint) { return ScalarJet2::constant(0.0); });
  const Jet2 j0 = eval_jet(flat, {0, 0});
  const ShapeData s0 = second_fundamental(flat.space, j0, unit_normal(flat.space, j0));
  EXPECT_EQ(s0.h11, 0.0);
  EXPECT_EQ(s0.h12, 0.0);
  EXPECT_EQ(s0.h22, 0.0);

  const SurfaceDef para = scalar_graph([](ParamPoint p) {
    const auto x = ScalarJet2::variable_x(p.u), y = ScalarJet2::variable_y(p.v);
    return 0.5 * (x * x + y * y);
  });
  const Jet2 j = eval_jet(para, {0, 0});
  const ShapeData s = second_fundamental(para.space, j, AmbientVector{1, 0, 0});
  EXPECT_DOUBLE_EQ(s.h11, -1.0);
  EXPECT_DOUBLE_EQ(s.h22, -1.0);
  EXPECT_DOUBLE_EQ(s.h12, 0.0);
}

TEST(MeanCurvature, GalleryValues) {
  const SurfaceDef P = gallery::make_surface(gallery::GalleryId::fP());
  const SurfaceDef H = gallery::make_surface(gallery::GalleryId::fH());
  EXPECT_NEAR(std::abs(mean_curvature(P.space, eval_jet(P, {0, 1}))), 0.5, 1e-12);
  EXPECT_NEAR(std::abs(mean_curvature(H.space, eval_jet(H, {0.3, 0.5}))), 0.5, 1e-12);
  EXPECT_NEAR(mean_curvature(fK().space, eval_jet(fK(), {2, 0})), 0.0, 1e-14);
}

TEST(MeanCurvature, HyperbolicPlane) {
  // t = sqrt(1 + x^2 + y^2) is the unit hyperboloid, |H| = 1.
  const SurfaceDef hyp = scalar_graph([](ParamPoint p) {
    const auto x = ScalarJet2::variable_x(p.u), y = ScalarJet2::variable_y(p.v);
    return sqrt(1.0 + x * x + y * y);
  });
  for (double x : {-1.0, 0.0, 0.6})
    for (double y : {-0.3, 0.8}) EXPECT_NEAR(std::abs(mean_curvature(hyp.space, eval_jet(hyp, {x, y}))), 1.0, 1e-12);
}

TEST(Alpha, Examples) {
  EXPECT_NEAR(alpha_extended(fK().space, eval_jet(fK(), {1, 0})), 0.0, 1e-15);
  const SurfaceDef Z = gallery::make_surface(gallery::GalleryId::fZ());
  for (double u = -2; u <= 2; u += 0.5)
    for (double v = -2; v <= 2; v += 0.5) EXPECT_NEAR(alpha_extended(Z.space, eval_jet(Z, {u, v})), 0.0, 1e-12);

  const SurfaceDef P = gallery::make_surface(gallery::GalleryId::fP());
  const Jet2 j = eval_jet(P, {0, 1});
  const double beta = first_fundamental(P.space, j).beta;
  const double H = mean_curvature(P.space, j);
  EXPECT_NEAR(std::abs(alpha_extended(P.space, j)), std::pow(std::abs(beta), 1.5), 1e-12);
  EXPECT_NEAR(alpha_extended(P.space, j), 2 * H * std::pow(std::abs(beta), 1.5), 1e-12);
}

TEST(Alpha, EqualsAForGraphs) {
  std::mt19937_64 g(17);
  std::uniform_real_distribution<double> U(-1.5, 1.5);
  for (int k = 0; k < 200; ++k) {
    ScalarJet2 s;
    s.fx = U(g), s.fy = U(g), s.fxx = U(g), s.fxy = U(g), s.fyy = U(g);
    const GraphAB ab = graph_AB(s);
    const Jet2 j = graph_jet(s, {0, 0});
    EXPECT_NEAR(alpha_extended(AmbientSpace::minkowski3(), j), ab.A, 1e-12);
    EXPECT_NEAR(first_fundamental(AmbientSpace::minkowski3(), j).beta, ab.B, 1e-14);
    if (std::abs(ab.B) > 1e-2) {
      EXPECT_NEAR(mean_curvature(AmbientSpace::minkowski3(), j), graph_mean_curvature(s),
                  1e-10 * (1 + std::abs(graph_mean_curvature(s))));
    }
  }
}

TEST(CurvatureAt, OptionalFieldsAtDegeneratePoints) {
  const CurvaturePoint c = curvature_at(fK().space, eval_jet(fK(), {1, 0}));
  EXPECT_FALSE(c.H.has_value());
  EXPECT_FALSE(c.shape.has_value());
  EXPECT_EQ(c.causal, PointCausality::degenerate);
  const CurvaturePoint d = curvature_at(fK().space, eval_jet(fK(), {0.2, 0.1}));
  ASSERT_TRUE(d.H.has_value());
  EXPECT_NEAR(*d.H, 0.0, 1e-14);
}

TEST(GraphAB, Examples) {
  const GraphAB a = graph_AB(graph_scalar_jet(fK(), {2, 0}));
  EXPECT_NEAR(a.A, 0.0, 1e-15);
  EXPECT_NEAR(a.B, -3.0, 1e-15);
  const GraphAB b = graph_AB(graph_scalar_jet(fK(), {1, 0}));
  EXPECT_NEAR(b.B, 0.0, 1e-15);
  EXPECT_NEAR(b.gradB[0], -2.0, 1e-15);
  EXPECT_NEAR(b.gradB[1], 0.0, 1e-15);
  EXPECT_NEAR(b.hessian_det, -1.0, 1e-15);
  const GraphAB c = graph_AB(ScalarJet2::variable_x(0.7));
  EXPECT_EQ(c.B, 0.0);
  EXPECT_EQ(c.gradB[0], 0.0);
  EXPECT_EQ(c.gradB[1], 0.0);
}

TEST(GraphAB, GradientMatchesDifferences) {
  const SurfaceDef g = gallery::construction_surface(0.05);
  const double h = 1e-5;
  for (ParamPoint p : {ParamPoint{0.4, 0.3}, ParamPoint{1.2, -0.6}}) {
    auto B = [&](ParamPoint q) { return graph_AB(graph_scalar_jet(g, q)).B; };
    const GraphAB ab = graph_AB(graph_scalar_jet(g, p));
    EXPECT_NEAR(ab.gradB[0], (B({p.u + h, p.v}) - B({p.u - h, p.v})) / (2 * h), 1e-8);
    EXPECT_NEAR(ab.gradB[1], (B({p.u, p.v + h}) - B({p.u, p.v - h})) / (2 * h), 1e-8);
  }
}

TEST(Extension, ExamplesOnSigma) {
  const AmbientVector v0 = extended_mean_curvature_vector(fK(), {1, 0});
  EXPECT_NEAR(v0.euclidean_norm(), 0.0, 1e-12);
  const AmbientVector v1 = extended_mean_curvature_vector(fK(), {2, 0});
  EXPECT_NEAR(v1.euclidean_norm(), 0.0, 1e-14);

  const SurfaceDef g = gallery::construction_surface(0.05);
  const AmbientVector V = extended_mean_curvature_vector(g, {1, 0});
  EXPECT_NEAR(V[0], -0.45, 1e-7);
  EXPECT_NEAR(V[1], 0.0, 1e-7);
  EXPECT_NEAR(V[2], -0.45, 1e-7);
}

TEST(Extension, AgreesWithClosedFormOffSigma) {
  const SurfaceDef g = gallery::construction_surface(0.05);
  ExtensionOptions opt;
  opt.direct_threshold = 10.0; // always extrapolate
  for (ParamPoint p : {ParamPoint{0.5, 0.2}, ParamPoint{1.5, 0.4}}) {
    const ScalarJet2 s = graph_scalar_jet(g, p);
    const GraphAB ab = graph_AB(s);
    const double k = ab.A / (2 * ab.B * ab.B);
    const AmbientVector V = extended_mean_curvature_vector(g, p, 1e-8, opt);
    EXPECT_NEAR(V[0], k, 1e-7 * (1 + std::abs(k)));
    EXPECT_NEAR(V[2], k * s.fy, 1e-7 * (1 + std::abs(k)));
  }
}

TEST(Extension, DivergenceDetected) {
  // t = (x^2 + y^2)/2 has A = -2 + |grad f|^2 != 0 on B = 0 (the unit circle), so H nu blows up.
  const SurfaceDef para = scalar_graph([](ParamPoint p) {
    const auto x = ScalarJet2::variable_x(p.u), y = ScalarJet2::variable_y(p.v);
    return 0.5 * (x * x + y * y);
  });
  EXPECT_THROW(extended_mean_curvature_vector(para, {1, 0}), DivergenceError);
  EXPECT_THROW(extended_A_over_B2(para, {0, 1}), DivergenceError);
}

TEST(Extension, DegenerateGradientRejected) {
  const SurfaceDef lightlike = scalar_graph([](ParamPoint p) { return ScalarJet2::variable_x(p.u); });
  EXPECT_THROW(extended_mean_curvature_vector(lightlike, {0.2, 0.3}), DegenerateTypeChangeError);
}
