#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "mixtype/curvature.hpp"
#include "mixtype/gallery.hpp"

using namespace mixtype;
namespace g = mixtype::gallery;

TEST(GalleryId, Parse) {
  EXPECT_EQ(g::parse_gallery_id("fP").kind, g::Kind::fP);
  EXPECT_EQ(g::parse_gallery_id("fK").kind, g::Kind::fK);
  const auto a = g::parse_gallery_id("fAds:alpha=0.5");
  EXPECT_EQ(a.kind, g::Kind::fAds);
  EXPECT_DOUBLE_EQ(a.param, 0.5);
  EXPECT_DOUBLE_EQ(g::parse_gallery_id("fAds").param, 1.0);
  EXPECT_DOUBLE_EQ(g::parse_gallery_id("construction").param, 0.01);
  EXPECT_DOUBLE_EQ(g::parse_gallery_id("construction:c=0.005").param, 0.005);
  EXPECT_EQ(g::parse_gallery_id("construction:c=0.005").label(), "construction:c=0.005");
}

TEST(GalleryId, Rejects) {
  EXPECT_THROW(g::parse_gallery_id("fQ"), ParseError);
  EXPECT_THROW(g::parse_gallery_id("fK:c=1"), ParseError);
  EXPECT_THROW(g::parse_gallery_id("fAds:c=1"), ParseError);
  EXPECT_THROW(g::parse_gallery_id("fAds:alpha=x"), ParseError);
  EXPECT_THROW(g::parse_gallery_id("fAds:alpha"), ParseError);
  EXPECT_THROW(g::parse_gallery_id("fAds:alpha=0"), PreconditionError);
  EXPECT_THROW(g::parse_gallery_id("construction:c=2"), PreconditionError);
}

TEST(Gallery, PositionExamples) {
  const SurfaceDef P = g::make_surface(g::GalleryId::fP());
  const AmbientVector p = P.position({0, 1});
  const double eta1 = (std::numbers::pi / 4 - 0.5) / 2;
  EXPECT_NEAR(p[0], 1 - eta1, 1e-15);
  EXPECT_NEAR(p[0], 0.857301, 1e-6);
  EXPECT_NEAR(p[1], -1.142699, 1e-6);
  EXPECT_NEAR(p[2], 0.0, 1e-15);

  const SurfaceDef H = g::make_surface(g::GalleryId::fH());
  const AmbientVector h = H.position({0, 0.5});
  EXPECT_NEAR(h[0], 0.5, 1e-15);
  EXPECT_NEAR(h[1], 0.0, 1e-15);
  EXPECT_NEAR(h[2], std::log(3.0) - 0.5, 1e-15);
  EXPECT_NEAR(h[2], 0.598612, 1e-6);

  const SurfaceDef Z = g::make_surface(g::GalleryId::fZ());
  EXPECT_EQ(Z.space.kind, SpaceKind::DeSitter3);
  EXPECT_NEAR(quadric_residual(Z.space, Z.position({0, 0})), 0.0, 1e-15);
  EXPECT_EQ(g::make_surface(g::GalleryId::fAds()).space.kind, SpaceKind::AntiDeSitter3);
}

TEST(Gallery, PositionMapAgreesWithJets) {
  for (const auto& id : {g::GalleryId::fP(), g::GalleryId::fH(), g::GalleryId::fK(), g::GalleryId::fZ(),
                         g::GalleryId::fAds(0.5), g::GalleryId::construction(0.01)}) {
    const SurfaceDef s = g::make_surface(id);
    const ParamPoint p{0.3, -0.4};
    const AmbientVector a = s.position(p), b = eval_jet(s, p).pos;
    EXPECT_LT((a - b).euclidean_norm(), 1e-14) << s.name;
  }
}

TEST(Implicit, ResidualsP) {
  const SurfaceDef P = g::make_surface(g::GalleryId::fP());
  EXPECT_LT(std::abs(g::implicit_residual_P(P.position({0, 1}))), 1e-12);
  EXPECT_EQ(g::implicit_residual_P({0, 0, 0}), 0.0);
  EXPECT_NEAR(g::implicit_residual_P({1, 1, 0}), 0.0, 1e-15);
  for (double u : {-1.0, 0.5})
    for (double v : {0.3, 1.7}) EXPECT_LT(std::abs(g::implicit_residual_P(P.position({u, v}))), 1e-11);
  EXPECT_THROW(g::implicit_residual_P({0, 0, 0, 0}), DimensionError);
}

TEST(Implicit, ResidualsH) {
  const SurfaceDef H = g::make_surface(g::GalleryId::fH());
  EXPECT_LT(std::abs(g::implicit_residual_H(H.position({0, 0.5}))), 1e-10);
  EXPECT_NEAR(g::implicit_residual_H({0.7, 0.7, 0}), 0.0, 1e-15);
  EXPECT_EQ(g::implicit_residual_H({0, 0, 0}), 0.0);
  for (double u : {-1.2, 0.4})
    for (double v : {-0.8, 0.2, 0.9}) EXPECT_LT(std::abs(g::implicit_residual_H(H.position({u, v}))), 1e-10);
}

TEST(Implicit, PsiInverse) {
  for (double v : {-0.999, -0.5, 0.0, 0.1, 0.75, 0.9999}) EXPECT_NEAR(g::psi_inverse(g::phi_H(v)), v, 1e-12);
  EXPECT_THROW(g::psi_inverse(NAN), DomainError);
}

TEST(Gallery, FAdsAlphaMapping) {
  // a = 1/tanh(alpha) enters the second and third coordinates.
  const SurfaceDef s = g::make_surface(g::GalleryId::fAds(0.5));
  const double a = 1 / std::tanh(0.5);
  const AmbientVector p = s.position({0.7, 0.2});
  EXPECT_NEAR(p[1], std::sinh(a * 0.7) * std::sinh(0.2), 1e-14);
  EXPECT_NEAR(p[2], std::cosh(a * 0.7) * std::sinh(0.2), 1e-14);
}

TEST(Gallery, CausalPartitionFZ) {
  const SurfaceDef Z = g::make_surface(g::GalleryId::fZ());
  for (double v = -3.0; v <= 3.0; v += 0.37) {
    const auto c = classify(first_fundamental(Z.space, eval_jet(Z, ParamPoint{0.5, v})));
    if (std::abs(std::cos(2 * v)) < 1e-6) continue;
    EXPECT_EQ(c == PointCausality::spacelike, std::cos(2 * v) > 0) << v;
  }
}
