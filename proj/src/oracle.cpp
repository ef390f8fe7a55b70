#include "taxoprob/oracle.hpp"

#include "taxoprob/errors.hpp"
#include "taxoprob/simplex.hpp"

namespace taxoprob {

std::vector<bool> AtomSystem::implying(const ConjunctiveEvent& event) const
{
    std::vector<bool> mask(atoms.size(), false);
    if (event.is_bottom())
        return mask;
    EventBits bits = universe.bits_of(event);
    for (std::size_t k = 0; k < atoms.size(); ++k)
        mask[k] = atom_implies(atoms[k], bits);
    return mask;
}

AtomSystem build_atom_system(const KnowledgeBase& kb, std::size_t atom_cap)
{
    AtomSystem system;
    system.universe = kb.universe();
    system.atoms = enumerate_atoms(kb.universe(), &kb.taxonomy(), atom_cap);

    const auto& formulas = kb.probabilistic();
    system.rows.resize(formulas.size() * 2);
    const std::size_t n = system.atoms.size();

#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t fi = 0; fi < static_cast<std::ptrdiff_t>(formulas.size()); ++fi) {
        const auto& f = formulas[static_cast<std::size_t>(fi)];
        std::vector<bool> premise = system.implying(f.premise);
        std::vector<bool> both = system.implying(conjoin(f.premise, f.conclusion));
        AtomSystem::Row lower{std::vector<Rational>(n, Rational(0)), static_cast<std::size_t>(fi), false};
        AtomSystem::Row upper{std::vector<Rational>(n, Rational(0)), static_cast<std::size_t>(fi), true};
        for (std::size_t k = 0; k < n; ++k) {
            Rational g = premise[k] ? Rational(1) : Rational(0);
            Rational gh = both[k] ? Rational(1) : Rational(0);
            lower.coeffs[k] = gh - f.interval.lo * g;
            upper.coeffs[k] = f.interval.hi * g - gh;
        }
        system.rows[2 * static_cast<std::size_t>(fi)] = std::move(lower);
        system.rows[2 * static_cast<std::size_t>(fi) + 1] = std::move(upper);
    }
    return system;
}

namespace {

// Homogeneous rows with no negative coefficient hold for every m >= 0.
bool trivially_satisfied(const AtomSystem::Row& row)
{
    for (const auto& c : row.coeffs)
        if (sgn(c) < 0)
            return false;
    return true;
}

// Rows of the system plus sum_{k in mask} m_k = 1.
lp::Problem normalised_problem(const AtomSystem& system, const std::vector<bool>& mask)
{
    lp::Problem problem;
    problem.num_vars = system.atoms.size();
    for (const auto& row : system.rows) {
        if (trivially_satisfied(row))
            continue;
        problem.constraints.push_back({row.coeffs, lp::Sense::GreaterEqual, Rational(0)});
    }
    lp::Constraint norm;
    norm.coeffs.assign(problem.num_vars, Rational(0));
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k])
            norm.coeffs[k] = 1;
    norm.sense = lp::Sense::Equal;
    norm.rhs = 1;
    problem.constraints.push_back(std::move(norm));
    problem.objective.assign(problem.num_vars, Rational(0));
    return problem;
}

} // namespace

bool kb_satisfiable(const AtomSystem& system)
{
    if (system.atoms.empty())
        return false;
    std::vector<bool> all(system.atoms.size(), true);
    return lp::feasible(normalised_problem(system, all));
}

bool kb_satisfiable(const KnowledgeBase& kb)
{
    return kb_satisfiable(build_atom_system(kb));
}

QueryAnswer tight_answer(const AtomSystem& system, const ConjunctiveEvent& f, const ConjunctiveEvent& e)
{
    // With the premise mass normalised to one, the homogeneous rows admit
    // exactly the rescaled models with Pr(e) > 0, and the ratio objective
    // becomes linear.
    std::vector<bool> premise = system.implying(e);
    lp::FeasibleRegion region(normalised_problem(system, premise));
    if (!region.feasible())
        return QueryAnswer::of(ProbabilityInterval::empty_answer());

    std::vector<bool> both = system.implying(conjoin(e, f));
    std::vector<Rational> objective(system.atoms.size(), Rational(0));
    for (std::size_t k = 0; k < both.size(); ++k)
        if (both[k])
            objective[k] = 1;

    lp::Solution low = region.optimise(objective, /*maximize=*/false);
    lp::Solution high = region.optimise(objective, /*maximize=*/true);
    if (low.status != lp::Status::Optimal || high.status != lp::Status::Optimal)
        throw InternalError("tight answer LP did not reach an optimum for (" + f.to_string() + " | " + e.to_string() +
                            ")");
    return QueryAnswer::of({low.value, high.value});
}

QueryAnswer tight_answer(const KnowledgeBase& kb, const ConjunctiveEvent& f, const ConjunctiveEvent& e)
{
    return tight_answer(build_atom_system(kb), f, e);
}

std::optional<Rational> max_probability(const AtomSystem& system, const ConjunctiveEvent& e)
{
    if (system.atoms.empty())
        return std::nullopt;
    std::vector<bool> all(system.atoms.size(), true);
    lp::FeasibleRegion region(normalised_problem(system, all));
    if (!region.feasible())
        return std::nullopt;
    std::vector<bool> mask = system.implying(e);
    std::vector<Rational> objective(system.atoms.size(), Rational(0));
    for (std::size_t k = 0; k < mask.size(); ++k)
        if (mask[k])
            objective[k] = 1;
    lp::Solution best = region.optimise(objective, /*maximize=*/true);
    if (best.status != lp::Status::Optimal)
        throw InternalError("max probability LP did not reach an optimum");
    return best.value;
}

bool entails_bruteforce(const TaxonomyStore& store, const ConjunctiveEvent& g, const ConjunctiveEvent& h,
                        std::size_t atom_cap)
{
    if (g.is_bottom())
        return true;
    const auto& u = store.universe();
    EventBits g_bits = u.bits_of(g);
    for (const auto& atom : enumerate_atoms(u, nullptr, atom_cap)) {
        if (!store.atom_consistent(atom) || !atom_implies(atom, g_bits))
            continue;
        if (h.is_bottom() || !atom_implies(u, atom, h))
            return false;
    }
    return true;
}

} // namespace taxoprob
