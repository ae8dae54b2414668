#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spt/cochain.hpp"
#include "spt/cohomology.hpp"
#include "spt/monomial.hpp"

namespace spt {

inline constexpr std::size_t kDefaultChainLength = 6;
inline constexpr std::size_t kMinChainLength = 2;

/// Registers 0..M with a cut p in [0, M].
struct RegisterChain {
    GroupRef group;
    std::size_t length = kDefaultChainLength;
    std::size_t cut = kDefaultChainLength / 2;

    RegisterChain(GroupRef g, std::size_t m, std::size_t p);
    RegisterChain(GroupRef g, std::size_t m) : RegisterChain(std::move(g), m, m / 2) {}

    RegisterSpace space() const { return RegisterSpace(group, length + 1); }
};

/// U^(g) for every g of the symmetry group, acting on registers whose labels
/// live in space.group() (the symmetry group itself, or a product of copies
/// of it for stacked models).
struct CompensatorFamily {
    GroupRef symmetry;
    RegisterSpace space;
    std::size_t length;
    std::size_t cut;
    /// The cocycle the model was built from (a product for stacked models).
    Cochain3 cocycle;
    std::string label;
    std::vector<MonomialOp> ops;

    const MonomialOp &at(Element g) const { return ops.at(g); }
};

/// U^(g): link diagonals w(l_x l_{x+1}^-1, l_{x+1}, g) for x in [0, M), then
/// l_x -> l_x g on every register.
CompensatorFamily build_compensators(const Cochain3 &omega, const RegisterChain &chain);

/// Copy of the family with U^(g) replaced by compose(D_g, U^(g)).
CompensatorFamily precompose(const CompensatorFamily &fam, const std::vector<MonomialOp> &diagonals);

/// Two models on the same symmetry group side by side: each register holds a
/// pair of labels and g acts diagonally.
CompensatorFamily stack_families(const CompensatorFamily &first, const CompensatorFamily &second);

/// The factors of U whose registers all lie at or beyond `first`.
MonomialOp restrict_to(const MonomialOp &u, std::size_t first);

MonomialOp build_upsilon(const CompensatorFamily &fam, Element g, Element h);

struct UpsilonSplit {
    MonomialOp minus;
    MonomialOp plus;
    DiagonalFactorization factors;
};

/// upsilon = minus . plus with plus the register factors at x >= p and minus
/// the scalar times the factors at x < p.
UpsilonSplit split_upsilon(const MonomialOp &upsilon, std::size_t cut, const ClassifyOptions &opts = {});

/// upsilon_+ from compensators restricted to registers >= p.
UpsilonSplit split_upsilon_restricted(const CompensatorFamily &fam, Element g, Element h,
                                      const ClassifyOptions &opts = {});

/// N = inverse of the register-p factor of upsilon_+. Throws pipeline_failure
/// if compose(N, upsilon_+) still acts within floor(M/4) of p.
MonomialOp solve_counterterm(const MonomialOp &upsilon_plus, std::size_t cut, const ClassifyOptions &opts = {});

/// tgh . tghk . (tghk2)^-1 . (conjugate(thk, Ug))^-1, argument names following
/// the pairs (g,h), (gh,k), (g,hk), (h,k).
MonomialOp build_iota(const MonomialOp &u_g, const MonomialOp &t_gh, const MonomialOp &t_gh_k,
                      const MonomialOp &t_g_hk, const MonomialOp &t_h_k);

/// The scalar of a localized iota; throws pipeline_failure otherwise.
Phase extract_index(const MonomialOp &iota, const ClassifyOptions &opts = {});

enum class SplitMode { factorized, restricted };
const char *to_string(SplitMode mode);

struct PipelineOptions {
    SplitMode split = SplitMode::factorized;
    /// Replaces N^(g,h) by mu(g,h)^-1 N^(g,h).
    std::optional<Cochain2> counterterm_shift;
    /// Conjugates every compensator and tilded upsilon_+ by this op.
    std::optional<MonomialOp> transport;
    ClassifyOptions classify;
};

struct IndexReport {
    std::string group;
    std::string cocycle;
    std::size_t length = 0;
    std::size_t cut = 0;
    Cochain3 extracted;
    CocycleCheck cocycle_check;
    bool matches_input = false;
    std::optional<Cochain2> witness;
    std::optional<std::int64_t> cyclic_level;
    std::vector<std::string> diagnostics;
    std::map<std::string, double> timings_ms;

    explicit IndexReport(GroupRef g) : extracted(std::move(g)) {}
    bool success() const { return cocycle_check.pass && matches_input; }
};

struct TildedUpsilon {
    MonomialOp upsilon;
    UpsilonSplit split;
    MonomialOp counterterm;
    MonomialOp tilded;
};

class IndexPipeline {
  public:
    explicit IndexPipeline(CompensatorFamily family, PipelineOptions opts = {});

    const CompensatorFamily &family() const noexcept { return fam_; }
    const PipelineOptions &options() const noexcept { return opts_; }

    TildedUpsilon tilde(Element g, Element h) const;
    MonomialOp iota(Element g, Element h, Element k) const;
    IndexReport run() const;

  private:
    MonomialOp transported(const MonomialOp &u) const;

    CompensatorFamily fam_;
    PipelineOptions opts_;
};

/// Full |G|^3 extraction with the cocycle check and class comparison.
IndexReport index_table(const Cochain3 &omega, const RegisterChain &chain, const PipelineOptions &opts = {});

IndexReport perturb_counterterms(const CompensatorFamily &fam, const Cochain2 &mu, PipelineOptions opts = {});

/// Transports the whole construction by R. The table must be unchanged
/// entrywise; a recomputation with fresh canonical counterterms is reported
/// in the diagnostics as a same-class check.
IndexReport conjugation_invariance(const CompensatorFamily &fam, const MonomialOp &r, PipelineOptions opts = {});

/// Stacks the two models registerwise and extracts the index of the product.
IndexReport stack_models(const CompensatorFamily &first, const CompensatorFamily &second,
                         const PipelineOptions &opts = {});

struct ChoiceRun {
    std::string choice;
    bool identical = false;
    bool same_class = false;
    /// When false the run only has to stay in the same class.
    bool require_identical = true;
    std::string detail;

    bool pass() const { return require_identical ? identical : same_class; }
};

struct ChoiceReport {
    std::vector<ChoiceRun> runs;
    std::uint64_t seed = 0;
    bool pass() const;
};

/// Reruns the extraction under every supported change of choice and compares
/// each table entrywise with the baseline (length M, cut M/2).
ChoiceReport choice_invariance_suite(const Cochain3 &omega, std::size_t length, std::uint64_t seed,
                                     std::size_t transport_factors = 20);

} // namespace spt
