//! Membership of relations in classes defined by pseudovarieties.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::algebra::{consolidate, Variant};
use crate::automata::{Mode, Relation};
use crate::error::{Error, Result};
use crate::profinite::{
    equation_counterexample, induced_dependencies, satisfies, Counterexample, EqualitySet, BUILTIN_SETS, VARIABLE_GUARD,
};
use crate::semigroup::{idempotent_power_by, FiniteSemigroup};
use crate::syntactic::{as_plus, syntactic_sync_algebra_with, MONOID_GUARD};
use crate::words::Tag;

/// Largest semigroup on which the E-closure is computed by default.
pub const CLOSURE_GUARD: usize = 24;
/// Bound on assignments tried per check.
pub const ASSIGNMENT_GUARD: usize = crate::profinite::ASSIGNMENT_GUARD;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VarietyKind {
    Monoid,
    Semigroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietySpec {
    pub name: String,
    pub kind: VarietyKind,
    pub equalities: EqualitySet,
    /// The E-closure computes the pointlike sets of the variety.
    pub henckell_trusted: bool,
    /// Induced dependencies of `equalities` characterize the class.
    pub deps_complete: bool,
}

impl VarietySpec {
    pub fn builtin(name: &str) -> Result<VarietySpec> {
        let equalities = EqualitySet::builtin(name)?;
        let kind = match name {
            "groups" | "commutative" | "aperiodic" => VarietyKind::Monoid,
            _ => VarietyKind::Semigroup,
        };
        Ok(VarietySpec {
            name: name.to_string(),
            kind,
            equalities,
            henckell_trusted: name == "aperiodic",
            deps_complete: name != "loctriv-weak",
        })
    }

    /// A semigroup variety given by equations, with no completeness claim.
    pub fn custom(equalities: EqualitySet) -> VarietySpec {
        VarietySpec {
            name: equalities.name.clone(),
            kind: VarietyKind::Semigroup,
            equalities,
            henckell_trusted: false,
            deps_complete: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    MonoidLifting,
    InducedDependencies,
    Pointlikes,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::MonoidLifting => "lifting",
            Method::InducedDependencies => "deps",
            Method::Pointlikes => "pointlikes",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MethodChoice {
    #[default]
    Auto,
    Lifting,
    Deps,
    Pointlikes,
}

impl FromStr for MethodChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(MethodChoice::Auto),
            "lifting" => Ok(MethodChoice::Lifting),
            "deps" => Ok(MethodChoice::Deps),
            "pointlikes" => Ok(MethodChoice::Pointlikes),
            _ => Err(Error::NotApplicable(format!("unknown method `{s}`"))),
        }
    }
}

/// Membership of one underlying monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonoidReport {
    pub tag: Tag,
    pub size: usize,
    pub member: bool,
    /// Failing equation and the element names assigned to its variables.
    pub failure: Option<(String, Vec<(String, String)>)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Monoids {
        monoids: Vec<MonoidReport>,
    },
    Dependency {
        dependency: String,
        counterexample: Counterexample,
    },
    Pointlike {
        set: Vec<String>,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub variety: String,
    pub is_v_relation: bool,
    pub method: Method,
    pub evidence: Evidence,
    pub caveat: Option<String>,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let answer = if self.is_v_relation { "yes" } else { "no" };
        writeln!(f, "{}: {} (method {})", self.variety, answer, self.method)?;
        match &self.evidence {
            Evidence::Monoids { monoids } => {
                for m in monoids {
                    write!(
                        f,
                        "  {} monoid of size {}: {}",
                        m.tag,
                        m.size,
                        if m.member { "in" } else { "not in" }
                    )?;
                    if let Some((eq, assign)) = &m.failure {
                        let parts: Vec<String> = assign.iter().map(|(v, x)| format!("{v} := {x}")).collect();
                        write!(f, " ({eq} fails at {})", parts.join(", "))?;
                    }
                    writeln!(f)?;
                }
            }
            Evidence::Dependency {
                dependency,
                counterexample,
            } => {
                writeln!(f, "  failing dependency: {dependency}")?;
                writeln!(f, "  {counterexample}")?;
            }
            Evidence::Pointlike { set } => writeln!(f, "  set meeting both images: {{{}}}", set.join(", "))?,
            Evidence::None => {}
        }
        if let Some(c) = &self.caveat {
            writeln!(f, "  note: {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Guards {
    pub monoid: usize,
    pub closure: usize,
    pub assignments: usize,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            monoid: MONOID_GUARD,
            closure: CLOSURE_GUARD,
            assignments: ASSIGNMENT_GUARD,
        }
    }
}

fn check_variables(e: &EqualitySet) -> Result<()> {
    for eq in &e.equations {
        let n = eq.vars().len();
        if n > VARIABLE_GUARD {
            return Err(Error::SizeGuardExceeded {
                what: "variables",
                size: n,
                guard: VARIABLE_GUARD,
            });
        }
    }
    Ok(())
}

/// Underlying monoids of the unital syntactic algebra checked against the equations.
pub fn decide_monoid_lifting(r: &Relation, v: &VarietySpec, guards: Guards) -> Result<Verdict> {
    if v.kind != VarietyKind::Monoid {
        return Err(Error::VarietyKindMismatch(format!(
            "{} is not a monoid variety",
            v.name
        )));
    }
    check_variables(&v.equalities)?;
    let syn = syntactic_sync_algebra_with(r, Variant::Unital, guards.monoid)?;
    let alg = syn.algebra();
    let monoids: Vec<MonoidReport> = Tag::SELF_COMPATIBLE
        .iter()
        .map(|&t| {
            let m = alg.underlying(t);
            let ids: Vec<usize> = alg.ids(t).collect();
            let failure = v.equalities.equations.iter().find_map(|eq| {
                equation_counterexample(&m, eq).map(|a| {
                    let names = eq
                        .vars()
                        .into_iter()
                        .zip(a.iter().map(|&x| alg.name(ids[x]).to_string()))
                        .collect();
                    (eq.to_string(), names)
                })
            });
            MonoidReport {
                tag: t,
                size: m.len(),
                member: failure.is_none(),
                failure,
            }
        })
        .collect();
    Ok(Verdict {
        variety: v.name.clone(),
        is_v_relation: monoids.iter().all(|m| m.member),
        method: Method::MonoidLifting,
        evidence: Evidence::Monoids { monoids },
        caveat: None,
    })
}

/// Induced dependencies of the equations checked on the positive syntactic algebra.
pub fn decide_positive_dependencies(r: &Relation, v: &VarietySpec, guards: Guards) -> Result<Verdict> {
    if r.mode != Mode::Plus {
        return Err(Error::ModeMismatch(
            "the dependency route needs a plus-mode relation".into(),
        ));
    }
    check_variables(&v.equalities)?;
    let syn = syntactic_sync_algebra_with(r, Variant::Positive, guards.monoid)?;
    let alg = syn.algebra();
    for d in induced_dependencies(&v.equalities) {
        if let Some(c) = satisfies(alg, &d, guards.assignments)? {
            return Ok(Verdict {
                variety: v.name.clone(),
                is_v_relation: false,
                method: Method::InducedDependencies,
                evidence: Evidence::Dependency {
                    dependency: d.to_string(),
                    counterexample: c,
                },
                caveat: None,
            });
        }
    }
    let caveat = (!v.deps_complete).then(|| {
        "these equations are not known to characterize the class; a positive answer may be too generous".to_string()
    });
    Ok(Verdict {
        variety: v.name.clone(),
        is_v_relation: true,
        method: Method::InducedDependencies,
        evidence: Evidence::None,
        caveat,
    })
}

/// Subset of a semigroup with at most 64 elements.
type Set = u64;

fn set_mul(s: &FiniteSemigroup, x: Set, y: Set) -> Set {
    let mut out = 0;
    for a in bits(x) {
        for b in bits(y) {
            out |= 1 << s.mul(a, b);
        }
    }
    out
}

fn bits(x: Set) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| x >> i & 1 == 1)
}

/// Maximal sets of a downward-closed family of subsets.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Closure {
    maximal: BTreeSet<Set>,
}

impl Closure {
    fn insert(&mut self, x: Set) -> bool {
        if self.maximal.iter().any(|&m| x & !m == 0) {
            return false;
        }
        self.maximal.retain(|&m| m & !x != 0);
        self.maximal.insert(x);
        true
    }

    pub fn contains(&self, x: Set) -> bool {
        self.maximal.iter().any(|&m| x & !m == 0)
    }

    /// Maximal members as sorted element lists.
    pub fn maximal_sets(&self) -> Vec<Vec<usize>> {
        self.maximal.iter().map(|&m| bits(m).collect()).collect()
    }

    /// Only singletons.
    pub fn is_trivial(&self) -> bool {
        self.maximal.iter().all(|m| m.count_ones() <= 1)
    }

    pub fn is_subfamily_of(&self, other: &Closure) -> bool {
        self.maximal.iter().all(|&m| other.contains(m))
    }
}

/// Least downward-closed subsemigroup of the powerset containing the singletons and
/// closed under the operator of each equation.
pub fn henckell_closure(s: &FiniteSemigroup, e: &EqualitySet, guard: usize) -> Result<Closure> {
    let n = s.len();
    if n > guard.min(64) {
        return Err(Error::SizeGuardExceeded {
            what: "semigroup for the E-closure",
            size: n,
            guard: guard.min(64),
        });
    }
    check_variables(e)?;
    let mut cl = Closure::default();
    for a in 0..n {
        cl.insert(1 << a);
    }
    let omega = |x: Set| idempotent_power_by(x, |a, b| set_mul(s, *a, *b));
    loop {
        let current: Vec<Set> = cl.maximal.iter().copied().collect();
        let mut changed = false;
        for &x in &current {
            for &y in &current {
                changed |= cl.insert(set_mul(s, x, y));
            }
        }
        for eq in &e.equations {
            let vars = eq.vars();
            let total = current.len().checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
            if total > ASSIGNMENT_GUARD {
                return Err(Error::SizeGuardExceeded {
                    what: "closure assignments",
                    size: total,
                    guard: ASSIGNMENT_GUARD,
                });
            }
            let mut idx = vec![0usize; vars.len()];
            'assign: loop {
                let lookup = |v: &str| Ok(current[idx[vars.iter().position(|x| x == v).expect("known variable")]]);
                let mul = |a: Set, b: Set| Ok(set_mul(s, a, b));
                let om = |a: Set| Ok(omega(a));
                let l = eq.lhs.fold(&lookup, &mul, &om)?;
                let r = eq.rhs.fold(&lookup, &mul, &om)?;
                changed |= cl.insert(l | r);
                let mut k = vars.len();
                loop {
                    if k == 0 {
                        break 'assign;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < current.len() {
                        break;
                    }
                    idx[k] = 0;
                }
            }
        }
        if !changed {
            return Ok(cl);
        }
    }
}

/// Separation of the relation from its well-formed complement through the E-closure of the
/// consolidated positive syntactic algebra.
pub fn decide_pointlikes(r: &Relation, v: &VarietySpec, guards: Guards) -> Result<Verdict> {
    if r.mode != Mode::Plus {
        return Err(Error::ModeMismatch(
            "the pointlike route needs a plus-mode relation".into(),
        ));
    }
    let syn = syntactic_sync_algebra_with(r, Variant::Positive, guards.monoid)?;
    let alg = syn.algebra();
    let acc = syn.accepting();
    let cons = consolidate(alg);
    let (mut inside, mut outside): (Set, Set) = (0, 0);
    for x in 0..alg.len() {
        let bit = 1 << cons.class_of[x];
        if acc.contains(x) {
            inside |= bit;
        } else {
            outside |= bit;
        }
    }
    let cl = henckell_closure(&cons.semigroup, &v.equalities, guards.closure)?;
    let witness = cl.maximal.iter().find(|&&m| m & inside != 0 && m & outside != 0);
    let caveat = (!v.henckell_trusted)
        .then(|| "the E-closure may be smaller than the pointlike sets of this class (experimental)".to_string());
    Ok(Verdict {
        variety: v.name.clone(),
        is_v_relation: witness.is_none(),
        method: Method::Pointlikes,
        evidence: match witness {
            Some(&m) => Evidence::Pointlike {
                set: bits(m).map(|i| cons.semigroup.name(i).to_string()).collect(),
            },
            None => Evidence::None,
        },
        caveat,
    })
}

/// Star relations and monoid varieties go through the lifting route, everything else
/// through induced dependencies on the plus-mode relation.
pub fn decide(r: &Relation, v: &VarietySpec, method: MethodChoice, guards: Guards) -> Result<Verdict> {
    match method {
        MethodChoice::Lifting => decide_monoid_lifting(r, v, guards),
        MethodChoice::Deps => decide_positive_dependencies(&as_plus(r), v, guards),
        MethodChoice::Pointlikes => decide_pointlikes(&as_plus(r), v, guards),
        MethodChoice::Auto => {
            if r.mode == Mode::Star && v.kind == VarietyKind::Monoid {
                decide_monoid_lifting(r, v, guards)
            } else {
                decide_positive_dependencies(&as_plus(r), v, guards)
            }
        }
    }
}

/// Verdicts for every built-in variety except the weak locally trivial one.
pub fn classify(r: &Relation, guards: Guards) -> Result<Vec<Verdict>> {
    BUILTIN_SETS
        .iter()
        .filter(|&&n| n != "loctriv-weak")
        .map(|n| decide(r, &VarietySpec::builtin(n)?, MethodChoice::Auto, guards))
        .collect()
}

#[cfg(test)]
mod tests;
