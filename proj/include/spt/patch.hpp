#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "spt/cochain.hpp"
#include "spt/monomial.hpp"

namespace spt {

enum class BoundaryCondition { torus, open };

/// Which legs of neighbouring sites on a boundary row form one link space,
/// and which neighbour each link's two-link phase pairs it with.
/// Link x joins leg first_leg of site (x-1, row) with leg second_leg of site
/// (x, row); the phase on links (x, x + direction) uses x + direction as the
/// second and third cocycle arguments.
struct LinkAssignment {
    int first_leg = 2;
    int second_leg = 1;
    int direction = -1;

    std::string name() const;
    bool operator==(const LinkAssignment &) const = default;
};

/// literal (1,2), mirrored (2,1), rotated (3,4), rotated-mirrored (4,3), each
/// with direction +x and -x.
const std::vector<LinkAssignment> &link_assignment_candidates();
LinkAssignment parse_link_assignment(const std::string &name);
/// The reflection y -> -y exchanges legs 1 <-> 4 and 2 <-> 3.
LinkAssignment mirror_y(const LinkAssignment &a);

/// Sites carry legs 1..4 pointing to the plaquettes at (x-1,y-1), (x,y-1),
/// (x,y) and (x-1,y). A torus has W x H sites and plaquettes; an open patch
/// has W x H plaquettes and (W+1) x (H+1) sites whose outward legs dangle.
class PatchGeometry {
  public:
    PatchGeometry(std::size_t width, std::size_t height, BoundaryCondition bc = BoundaryCondition::torus,
                  LinkAssignment link = {});

    std::size_t width() const noexcept { return w_; }
    std::size_t height() const noexcept { return h_; }
    BoundaryCondition boundary() const noexcept { return bc_; }
    const LinkAssignment &link() const noexcept { return link_; }
    void set_link(const LinkAssignment &a) { link_ = a; }

    std::size_t site_columns() const noexcept { return bc_ == BoundaryCondition::torus ? w_ : w_ + 1; }
    std::size_t site_rows() const noexcept { return bc_ == BoundaryCondition::torus ? h_ : h_ + 1; }
    std::size_t site_count() const noexcept { return site_columns() * site_rows(); }
    std::size_t leg_count() const noexcept { return 4 * site_count(); }
    std::size_t plaquette_count() const noexcept { return w_ * h_; }

    /// Site index; coordinates wrap on a torus.
    std::size_t site(std::ptrdiff_t x, std::ptrdiff_t y) const;
    Register leg(std::size_t site, int a) const { return static_cast<Register>(4 * site + (a - 1)); }
    /// Plaquette a leg points into, or nullopt for a dangling leg.
    std::optional<std::uint32_t> plaquette_of_leg(Register r) const { return leg_plaquette_.at(r); }
    const std::vector<Register> &plaquette_legs(std::uint32_t p) const { return plaquette_legs_.at(p); }
    /// The four sites around a plaquette.
    std::vector<std::size_t> plaquette_sites(std::uint32_t p) const;

    std::vector<std::size_t> all_sites() const;
    /// Sites in rows [1, H/2], the half-region of the compensation checks.
    std::vector<std::size_t> half_region() const;
    std::size_t primary_boundary_row() const { return h_ / 2 + 1; }
    std::size_t far_boundary_row() const { return 0; }

  private:
    std::size_t w_, h_;
    BoundaryCondition bc_;
    LinkAssignment link_;
    std::vector<std::optional<std::uint32_t>> leg_plaquette_;
    std::vector<std::vector<Register>> plaquette_legs_;
};

RegisterSpace patch_space(const GroupRef &group, const PatchGeometry &geom);

/// Product over the given sites of the on-site action: the weight
/// w(l2 l1^-1, l1, g) w(l3 l2^-1, l2, g) / (w(l3 l4^-1, l4, g) w(l4 l1^-1, l1, g))
/// followed by l_a -> l_a g on all four legs.
MonomialOp onsite_symmetry_op(const Cochain3 &omega, const PatchGeometry &geom, Element g,
                              const std::vector<std::size_t> &sites);

/// K'' then K' on the links of one site row, restricted to links
/// [first_link, first_link + count) (all W links when count == 0; the
/// two-link phases then wrap around). Off the link-diagonal subspace every
/// factor acts as the identity. conjugate_cocycle uses w^-1.
MonomialOp boundary_compensator_2d(const Cochain3 &omega, const PatchGeometry &geom, Element g, std::size_t row,
                                   const LinkAssignment &link, bool conjugate_cocycle, std::size_t first_link = 0,
                                   std::size_t count = 0);

/// The two legs forming link x on a row.
std::pair<Register, Register> link_legs(const PatchGeometry &geom, std::size_t row, const LinkAssignment &link,
                                        std::ptrdiff_t x);

/// Full compensator on both boundary circles of the half-region: the primary
/// row carries geom.link() with w, the far row its y-mirror with w^-1.
MonomialOp full_compensator_2d(const Cochain3 &omega, const PatchGeometry &geom, Element g);

/// Threads the compensator, then the symmetry restricted to the half-region.
MonomialOp compensated_symmetry(const Cochain3 &omega, const PatchGeometry &geom, Element g);

inline constexpr std::uint64_t kSparseTermCap = std::uint64_t{1} << 20;

/// <psi|U|psi> for a uniform-magnitude state: how many basis terms land on a
/// term of the state with each relative phase, out of `total`.
struct Overlap {
    std::map<Phase, std::uint64_t> histogram;
    std::uint64_t total = 0;

    bool unit() const { return histogram.size() == 1 && histogram.begin()->second == total; }
    /// The phase of a unit overlap.
    Phase phase() const;
    std::complex<double> value() const;
    double magnitude() const { return std::abs(value()); }
};

/// A superposition of leg configurations with equal magnitudes.
class SparsePatchState {
  public:
    using Key = std::string;

    SparsePatchState(GroupRef group, std::size_t registers) : group_(std::move(group)), registers_(registers) {}

    std::size_t size() const noexcept { return terms_.size(); }
    std::size_t registers() const noexcept { return registers_; }
    const FiniteGroup &group() const noexcept { return *group_; }
    const GroupRef &group_ref() const noexcept { return group_; }

    void add(const BasisConfig &c, Phase amplitude);
    std::optional<Phase> amplitude(const BasisConfig &c) const;
    const std::vector<std::pair<BasisConfig, Phase>> &terms() const noexcept { return terms_; }

    /// <psi| U, term by term.
    SparsePatchState apply(const MonomialOp &u) const;

    static Key key(const BasisConfig &c);

  private:
    GroupRef group_;
    std::size_t registers_;
    std::vector<std::pair<BasisConfig, Phase>> terms_;
    std::unordered_map<Key, std::size_t> index_;
};

/// Sum over independent plaquette labels; every leg of a plaquette carries its
/// label, dangling legs the identity. Throws budget_exceeded above the cap.
SparsePatchState build_patch_state(const GroupRef &group, const PatchGeometry &geom,
                                   std::uint64_t cap = kSparseTermCap);

/// <a|b> normalized by the term counts.
Overlap inner_product(const SparsePatchState &a, const SparsePatchState &b);
/// <psi|U|psi>, OpenMP over terms.
Overlap sparse_expectation(const SparsePatchState &psi, const MonomialOp &u);
Overlap sparse_expectation_serial(const SparsePatchState &psi, const MonomialOp &u);

/// Exact test of |<psi|U|psi>| = 1 for the plaquette state without
/// enumerating it: U must map each plaquette's legs to a common label and
/// the phase must not change when any single plaquette label changes. Both
/// are decided by enumerating the dependency cone of each plaquette.
struct LightConeResult {
    bool support_preserved = true;
    bool phase_constant = true;
    /// Phase at the all-identity term; the expectation when unit().
    Phase phase;
    std::vector<std::uint32_t> damaged_plaquettes;
    std::uint64_t configs_checked = 0;
    std::size_t largest_cone = 0;

    bool unit() const { return support_preserved && phase_constant; }
};

inline constexpr std::size_t kMaxConePlaquettes = 16;

LightConeResult light_cone_expectation(const MonomialOp &u, const PatchGeometry &geom);
LightConeResult light_cone_expectation_serial(const MonomialOp &u, const PatchGeometry &geom);

struct PatchCheck {
    bool pass = true;
    std::uint64_t checked = 0;
    std::vector<std::string> violations;
};

/// R^(g) R^(h) = R^(gh): every single-site configuration, then `samples`
/// random patch configurations with all sites acting.
PatchCheck verify_representation(const Cochain3 &omega, const PatchGeometry &geom, std::size_t samples = 200,
                                 std::uint64_t seed = 1);

/// Acting on the four sites around a plaquette moves its legs from L to L g
/// and leaves everything else, including the phase, independent of L.
PatchCheck verify_plaquette_invariance(const Cochain3 &omega, const PatchGeometry &geom);

/// The symmetry on every site fixes the state: light-cone test for every g,
/// plus the exact sparse overlap when the state fits under the cap.
PatchCheck verify_global_invariance(const Cochain3 &omega, const PatchGeometry &geom,
                                    std::uint64_t sparse_cap = kSparseTermCap);

struct CompensationOutcome {
    LinkAssignment assignment;
    bool pass = true;
    /// Light-cone result per group element.
    std::vector<LightConeResult> per_element;
};

/// Checks (compensator . restricted symmetry)(psi) = psi for every g, using
/// geom.link().
CompensationOutcome verify_compensation(const Cochain3 &omega, const PatchGeometry &geom);

struct AssignmentSelection {
    std::optional<LinkAssignment> selected;
    std::vector<CompensationOutcome> candidates;
};

/// Runs verify_compensation for every candidate and selects the first that
/// passes.
AssignmentSelection select_link_assignment(const Cochain3 &omega, const PatchGeometry &geom);

struct ArcIndex {
    Cochain3 table;
    bool all_unit = true;
    std::vector<std::string> diagnostics;

    explicit ArcIndex(GroupRef g) : table(std::move(g)) {}
};

/// The index from compensators restricted to an arc of the primary boundary
/// (links ordered along geom.link().direction), split at arc position cut,
/// with the counterterm w(l_cut, g, h)^-1 on the cut link and the tilded
/// symmetry transport by the full compensated symmetry. Each entry is the
/// light-cone expectation of iota.
ArcIndex arc_index_crosscheck(const Cochain3 &omega, const PatchGeometry &geom, std::size_t arc_links = 0,
                              std::size_t cut = 0);

/// Whether conjugating K^(h) by the unrestricted symmetry W^(g) fixes the
/// state as K^(h) does, for every pair (g, h).
std::vector<std::string> global_action_on_compensators(const Cochain3 &omega, const PatchGeometry &geom);

} // namespace spt
