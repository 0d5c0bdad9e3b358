#include <gtest/gtest.h>

#include <cmath>

#include "mixtype/gallery.hpp"
#include "mixtype/typechange.hpp"

using namespace mixtype;

namespace {

ScalarField circle_field() {
  return [](ParamPoint p) { return FieldSample{1 - p.u * p.u - p.v * p.v, {-2 * p.u, -2 * p.v}}; };
}

const Rect kSquare3{-3, 3, -3, 3};

} // namespace

TEST(Classify, Examples) {
  const ScalarGraph fK = gallery::fK_scalar();
  const TypeChangeClass a = classify_point(fK({1, 0}));
  EXPECT_EQ(a.kind, TypeChangeKind::nondegenerate);
  EXPECT_NEAR(a.gradB[0], -2.0, 1e-15);
  EXPECT_NEAR(a.gradB[1], 0.0, 1e-15);
  EXPECT_NEAR(a.hessian_det, -1.0, 1e-15);
  EXPECT_EQ(classify_point(ScalarJet2::variable_x(0.4)).kind, TypeChangeKind::degenerate);
  const TypeChangeClass c = classify_point(fK({2, 0}));
  EXPECT_EQ(c.kind, TypeChangeKind::not_type_change);
  EXPECT_NEAR(c.B, -3.0, 1e-15);
}

TEST(Trace, FKGivesTwoCurvesOnCosh) {
  const auto curves = trace_characteristic_curves(gallery::fK_scalar(), kSquare3, 60, 60);
  ASSERT_EQ(curves.size(), 2u);
  for (const auto& c : curves) {
    EXPECT_FALSE(c.closed);
    ASSERT_GT(c.vertices.size(), 10u);
    for (std::size_t k = 0; k < c.vertices.size(); ++k) {
      const ParamPoint p = c.vertices[k];
      EXPECT_LT(std::abs(std::abs(p.u) - std::cosh(p.v)), 1e-6);
      EXPECT_LT(std::abs(c.values[k]), 1e-10);
      EXPECT_EQ(c.classifications[k].kind, TypeChangeKind::nondegenerate);
      // Hessian criterion: non-vanishing gradient iff non-vanishing Hessian determinant.
      EXPECT_GT(std::abs(c.classifications[k].hessian_det), 1e-8);
      const AmbientVector& a = c.ambient_trace[k];
      EXPECT_NEAR(a[0], p.u * std::tanh(p.v), 1e-14);
    }
    for (std::size_t k = 1; k < c.arclength.size(); ++k) EXPECT_GT(c.arclength[k], c.arclength[k - 1]);
  }
  // Opposite branches
  EXPECT_LT(curves[0].vertices.front().u * curves[1].vertices.front().u, 0.0);
}

TEST(Trace, CircleIsClosed) {
  const auto curves = trace_zero_set(circle_field(), Rect{-2, 2, -2, 2}, 40, 40);
  ASSERT_EQ(curves.size(), 1u);
  EXPECT_TRUE(curves[0].closed);
  for (const auto& p : curves[0].vertices) EXPECT_NEAR(p.norm(), 1.0, 1e-10);
}

TEST(Trace, NoZerosGivesEmpty) {
  const ScalarField one = [](ParamPoint) { return FieldSample{1.0, {0.0, 0.0}}; };
  EXPECT_TRUE(trace_zero_set(one, kSquare3, 20, 20).empty());
}

TEST(Trace, Deterministic) {
  const auto a = trace_characteristic_curves(gallery::construction_scalar(0.01), kSquare3, 50, 40);
  const auto b = trace_characteristic_curves(gallery::construction_scalar(0.01), kSquare3, 50, 40);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    ASSERT_EQ(a[i].vertices.size(), b[i].vertices.size());
    for (std::size_t k = 0; k < a[i].vertices.size(); ++k) EXPECT_EQ(a[i].vertices[k], b[i].vertices[k]);
  }
}

TEST(Trace, Preconditions) {
  EXPECT_THROW(trace_zero_set(circle_field(), kSquare3, 4, 20), PreconditionError);
  EXPECT_THROW(trace_zero_set(circle_field(), Rect{1, 1, 0, 1}, 20, 20), PreconditionError);
}

TEST(NullCurve, Examples) {
  const auto hyperbola = [](double t) {
    return CurveJet{{std::sinh(t), std::cosh(t), t}, {std::cosh(t), std::sinh(t), 1.0}, {std::sinh(t), std::cosh(t), 0.0}};
  };
  const NullCurveReport a = null_curve_check(hyperbola, 50, -2, 2);
  EXPECT_EQ(a.verdict, NullVerdict::null_nondegenerate);
  EXPECT_LT(a.max_null_residual, 1e-12);

  const auto line = curve_jet_fd([](double t) { return AmbientVector{t, t, 0.0}; });
  EXPECT_EQ(null_curve_check(line, 20, -1, 1).verdict, NullVerdict::null_degenerate);

  const auto circle = [](double t) {
    return CurveJet{{0, std::cos(t), std::sin(t)}, {0, -std::sin(t), std::cos(t)}, {0, -std::cos(t), -std::sin(t)}};
  };
  EXPECT_EQ(null_curve_check(circle, 20, 0, 6).verdict, NullVerdict::not_null);
}

TEST(NullCurve, IndependenceMeasure) {
  EXPECT_NEAR(independence_measure({1, 0, 0}, {0, 1, 0}), 1.0, 1e-15);
  EXPECT_NEAR(independence_measure({1, 1, 0}, {2, 2, 0}), 0.0, 1e-15);
  EXPECT_EQ(independence_measure({1, 1, 0}, {0, 0, 0}), 0.0);
}

TEST(NullCurve, CharacteristicCurvesOfGraphs) {
  for (const ScalarGraph& g : {gallery::fK_scalar(), gallery::construction_scalar(0.01)}) {
    for (const auto& c : trace_characteristic_curves(g, kSquare3, 60, 60)) {
      const NullCurveReport r = characteristic_null_report(g, c);
      EXPECT_EQ(r.verdict, NullVerdict::null_nondegenerate);
      EXPECT_LT(r.max_null_residual, 1e-8);
      EXPECT_GT(r.min_independence, 1e-6);
    }
  }
}

TEST(NullCurve, CharacteristicJetOfFK) {
  // Sigma of fK through (cosh s, s) maps to (sinh s, cosh s, s), velocity (cosh s, sinh s, 1) up to scale.
  const double s = 0.7;
  const CurveJet j = characteristic_curve_jet(gallery::fK_scalar(), {std::cosh(s), s});
  const double k = j.d1[2];
  EXPECT_NEAR(j.d1[0], k * std::cosh(s), 1e-10);
  EXPECT_NEAR(j.d1[1], k * std::sinh(s), 1e-10);
  EXPECT_NEAR(j.pos[0], std::sinh(s), 1e-14);
}

TEST(VanishingOrder, Examples) {
  const OrderEstimate cube = vanishing_order([](double s) { return s * s * s; }, 0.0, 1.0);
  EXPECT_EQ(cube.order, 3);
  EXPECT_NEAR(cube.leading_coeff, 1.0, 1e-6);
  EXPECT_LT(cube.fit_residual, 0.05);

  const ScalarGraph fK = gallery::fK_scalar();
  const OrderEstimate b = vanishing_order([&](double s) { return graph_AB(fK({s, 0})).B; }, 1.0, 0.1);
  EXPECT_EQ(b.order, 1);
  EXPECT_NEAR(b.leading_coeff, -2.0, 1e-6);

  const ScalarGraph g = gallery::construction_scalar(0.01);
  const OrderEstimate a = vanishing_order([&](double s) { return graph_AB(g({1.0 + s, 0.0})).A; }, 0.0, 0.1);
  EXPECT_EQ(a.order, 2);
  EXPECT_FALSE(a.identically_zero);

  const OrderEstimate z = vanishing_order([](double) { return 0.0; }, 0.0, 1.0);
  EXPECT_TRUE(z.identically_zero);
}

TEST(VanishingOrder, DisagreeingSidesRejected) {
  // |s| s^2 on one side and s on the other
  EXPECT_THROW(vanishing_order([](double s) { return s > 0 ? s * s * s : s; }, 0.0, 1.0), OrderFitError);
}

TEST(MeanCurvatureLimit, ConstructionSurface) {
  const SurfaceDef g = gallery::construction_surface(0.01);
  const auto r = verify_mean_curvature_limit(g, [](double s) { return ParamPoint{s, 0.0}; }, 1.0);
  EXPECT_NEAR(r.s_j, 1.0, 1e-12);
  EXPECT_EQ(r.beta_order.order, 1);
  EXPECT_EQ(r.alpha_order.order, 2);
  EXPECT_TRUE(r.m_odd);
  EXPECT_TRUE(r.strict_inequality);
  ASSERT_TRUE(r.expected_exponent.has_value());
  EXPECT_DOUBLE_EQ(*r.expected_exponent, 0.5);
  for (const auto& e : r.fitted_exponent) {
    ASSERT_TRUE(e.has_value());
    EXPECT_NEAR(*e, 0.5, 0.05);
  }
  EXPECT_TRUE(r.H_tends_to_zero);
}

TEST(MeanCurvatureLimit, FKIsIdenticallyZero) {
  const SurfaceDef s = gallery::make_surface(gallery::GalleryId::fK());
  const auto r = verify_mean_curvature_limit(s, [](double t) { return ParamPoint{t, 0.0}; }, 1.0);
  EXPECT_TRUE(r.alpha_order.identically_zero);
  EXPECT_TRUE(r.H_tends_to_zero);
  for (const auto& h : r.samples) EXPECT_LT(std::abs(h.H), 1e-6);
}

TEST(MeanCurvatureLimit, OneSignedBetaRejected) {
  const SurfaceDef s = gallery::make_surface(gallery::GalleryId::fK());
  EXPECT_THROW(verify_mean_curvature_limit(s, [](double t) { return ParamPoint{t, 0.0}; }, 0.3), PreconditionError);
}
