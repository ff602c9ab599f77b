#pragma once

#include "hori/dgca.hpp"

namespace hori {

/// Fixed names of the generators adjoined by gerbe towers. User algebras
/// feeding into a tower may not use them.
inline constexpr const char* kE1L = "e1L";
inline constexpr const char* kE1R = "e1R";
inline constexpr const char* kXi2L = "xi2L";
inline constexpr const char* kXi2R = "xi2R";
inline constexpr const char* kUVar = "u";

/// The algebra classifying T-duality configurations:
/// generators x2L, x2R of degree 2 and y3 of degree 3 with d(y3) = x2L*x2R,
/// together with the two cocycle maps p_L, p_R out of K[x2] and the swap
/// automorphism.
struct Classifying {
    FreeDGCA kx2;     // K[x2], zero differential
    FreeDGCA algebra; // K[x2L, x2R, y3]
    DgcaMorphism p_L;
    DgcaMorphism p_R;
    DgcaMorphism sigma;
};

const Classifying& classifying();

/// A T-duality configuration on A: degree-2 cocycles fxL, fxR and a
/// degree-3 element fy with d(fy) = fxL*fxR, precisely the data of a DGCA
/// map from the classifying algebra into A.
class TDualityConfig {
public:
    TDualityConfig() = default;
    TDualityConfig(FreeDGCA target, GradedElement fxL, GradedElement fxR, GradedElement fy);

    const FreeDGCA& target() const { return target_; }
    const GradedElement& fxL() const { return fxL_; }
    const GradedElement& fxR() const { return fxR_; }
    const GradedElement& fy() const { return fy_; }

    DgcaMorphism induced_morphism() const;

private:
    FreeDGCA target_;
    GradedElement fxL_, fxR_, fy_;
};

/// The configuration on the classifying algebra itself: fxL = x2L,
/// fxR = x2R, fy = y3.
TDualityConfig universal_config();

/// The tower of extensions of A determined by a configuration, the two
/// gerbes and their common double extension, together with all inclusion
/// morphisms.
struct GerbeTower {
    TDualityConfig config;

    FreeDGCA C; // classifying algebra (source of f)
    FreeDGCA A;
    FreeDGCA A_L, A_R, A_LR;
    FreeDGCA G_L, G_R;
    FreeDGCA GL_ext, GR_ext;

    CocycleExtension ext_AL;     // A + e1L
    CocycleExtension ext_AR;     // A + e1R
    CocycleExtension ext_ALR;    // A_L + e1R
    CocycleExtension ext_GL;     // A_L + xi2L
    CocycleExtension ext_GR;     // A_R + xi2R
    CocycleExtension ext_GLext;  // G_L + e1R
    CocycleExtension ext_GRext;  // G_R + e1L

    DgcaMorphism f;           // classifying -> A
    DgcaMorphism iota_L;      // A -> A_L
    DgcaMorphism iota_R;      // A -> A_R
    DgcaMorphism iota_R_AL;   // A_L -> A_LR
    DgcaMorphism iota_L_AR;   // A_R -> A_LR
    DgcaMorphism i_L;         // A_L -> G_L
    DgcaMorphism i_R;         // A_R -> G_R
    DgcaMorphism iota_R_GL;   // G_L -> GL_ext
    DgcaMorphism iota_L_GR;   // G_R -> GR_ext
    DgcaMorphism i_L_LR;      // A_LR -> GL_ext
    DgcaMorphism i_R_LR;      // A_LR -> GR_ext

    /// d²=0 on all nine algebras, morphism checks, and commutativity of
    /// the central square.
    CheckReport verify() const;

    std::vector<const FreeDGCA*> algebras() const;
};

GerbeTower build_gerbe_tower(const TDualityConfig& config);

/// Generator lists and differentials of the nine algebras, one block per
/// algebra, in tower order; used by the CLI and pinned by golden tests.
std::string tower_summary(const GerbeTower& tower);

/// The gerbe isomorphism: identity on A_LR, xi2L ↦ xi2R + e1L*e1R,
/// and its inverse xi2R ↦ xi2L - e1L*e1R.
DgcaMorphism nu(const GerbeTower& tower);
DgcaMorphism nu_inv(const GerbeTower& tower);

/// Which 2-cocycle of the classifying algebra is the decoration.
enum class Side { left, right };

/// The hofib/cyc adjunction, forward direction: for phi a morphism from the
/// classifying algebra with phi(x2L) = E.cocycle (left decoration), the
/// degree-3 cocycle phi(y3) - e*phi(x2R) in the extension E.
GradedElement hofib_cyc_forward(const CocycleExtension& E, const DgcaMorphism& phi,
                                Side side = Side::left);

/// Backward direction: a degree-3 cocycle t3 = a3 - e*b2 in the extension
/// determines the morphism y3 ↦ a3, x2R ↦ b2, x2L ↦ E.cocycle.
DgcaMorphism hofib_cyc_backward(const CocycleExtension& E, const GradedElement& t3,
                                Side side = Side::left);

} // namespace hori
