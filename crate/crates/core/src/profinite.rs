//! ω-terms, typings and profinite dependencies evaluated on finite algebras.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::SyncAlgebra;
use crate::error::{Error, Result};
use crate::semigroup::{idempotent_power_by, FiniteSemigroup};
use crate::words::Tag;

/// Default bound on the number of assignments tried by [`satisfies`].
pub const ASSIGNMENT_GUARD: usize = 2_000_000;
/// Default bound on the number of variables per equation.
pub const VARIABLE_GUARD: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OmegaTerm {
    Var(String),
    Prod(Box<OmegaTerm>, Box<OmegaTerm>),
    Omega(Box<OmegaTerm>),
}

impl OmegaTerm {
    pub fn var(name: &str) -> Self {
        OmegaTerm::Var(name.to_string())
    }

    pub fn prod(a: OmegaTerm, b: OmegaTerm) -> Self {
        OmegaTerm::Prod(Box::new(a), Box::new(b))
    }

    pub fn omega(a: OmegaTerm) -> Self {
        OmegaTerm::Omega(Box::new(a))
    }

    /// Variables in order of first occurrence.
    pub fn vars(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        match self {
            OmegaTerm::Var(v) => {
                if !out.contains(v) {
                    out.push(v.clone());
                }
            }
            OmegaTerm::Prod(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            OmegaTerm::Omega(a) => a.collect_vars(out),
        }
    }

    /// Generic evaluation: `var` interprets variables, `mul` and `omega` the operations.
    pub fn fold<T>(
        &self,
        var: &impl Fn(&str) -> Result<T>,
        mul: &impl Fn(T, T) -> Result<T>,
        omega: &impl Fn(T) -> Result<T>,
    ) -> Result<T> {
        match self {
            OmegaTerm::Var(v) => var(v),
            OmegaTerm::Prod(a, b) => {
                let x = a.fold(var, mul, omega)?;
                let y = b.fold(var, mul, omega)?;
                mul(x, y)
            }
            OmegaTerm::Omega(a) => omega(a.fold(var, mul, omega)?),
        }
    }

    /// Tag of the term under a typing.
    pub fn tag_under(&self, typing: &Typing) -> Result<Tag> {
        self.fold(
            &|v| {
                typing
                    .get(v)
                    .ok_or_else(|| Error::IllTypedTerm(format!("variable {v} has no type")))
            },
            &|s: Tag, t: Tag| {
                s.concat(t)
                    .ok_or_else(|| Error::IncompatibleProduct(format!("{s} · {t}")))
            },
            &|t: Tag| {
                if t.is_self_compatible() {
                    Ok(t)
                } else {
                    Err(Error::IllTypedTerm(format!("ω-power of type {t}")))
                }
            },
        )
    }

    fn factors(&self) -> Vec<&OmegaTerm> {
        match self {
            OmegaTerm::Prod(a, b) => {
                let mut v = a.factors();
                v.extend(b.factors());
                v
            }
            t => vec![t],
        }
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::Var(v) => write!(f, "{v}"),
            OmegaTerm::Omega(a) => match **a {
                OmegaTerm::Var(_) | OmegaTerm::Omega(_) => write!(f, "{a}^w"),
                _ => write!(f, "({a})^w"),
            },
            OmegaTerm::Prod(..) => {
                let parts: Vec<String> = self.factors().iter().map(|t| t.to_string()).collect();
                write!(f, "{}", parts.join(" "))
            }
        }
    }
}

struct TermParser<'a> {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    _src: &'a str,
}

impl TermParser<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.pos + 1, msg)
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn term(&mut self) -> Result<OmegaTerm> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = OmegaTerm::prod(acc, f);
                }
                Some(c) if c == '(' || c.is_ascii_lowercase() => {
                    let f = self.factor()?;
                    acc = OmegaTerm::prod(acc, f);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<OmegaTerm> {
        let mut t = match self.peek() {
            Some('(') => {
                self.pos += 1;
                let t = self.term()?;
                if self.peek() != Some(')') {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                t
            }
            Some(c) if c.is_ascii_lowercase() => {
                let start = self.pos;
                while self.pos < self.chars.len()
                    && (self.chars[self.pos].is_ascii_lowercase() || self.chars[self.pos].is_ascii_digit())
                {
                    self.pos += 1;
                }
                OmegaTerm::Var(self.chars[start..self.pos].iter().collect())
            }
            Some(c) => return Err(self.err(format!("unexpected `{c}`"))),
            None => return Err(self.err("unexpected end of term")),
        };
        while self.peek() == Some('^') {
            self.pos += 1;
            match self.chars.get(self.pos) {
                Some('w') | Some('ω') => self.pos += 1,
                _ => return Err(self.err("expected `w` after `^`")),
            }
            t = OmegaTerm::omega(t);
        }
        Ok(t)
    }
}

fn parse_term_at(s: &str, line: usize) -> Result<OmegaTerm> {
    let mut p = TermParser {
        chars: s.chars().collect(),
        pos: 0,
        line,
        _src: s,
    };
    let t = p.term()?;
    if let Some(c) = p.peek() {
        return Err(p.err(format!("trailing `{c}`")));
    }
    Ok(t)
}

pub fn parse_term(s: &str) -> Result<OmegaTerm> {
    parse_term_at(s, 1)
}

/// Assignment of a tag to each variable, in variable order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Typing(pub Vec<(String, Tag)>);

impl Typing {
    pub fn get(&self, v: &str) -> Option<Tag> {
        self.0.iter().find(|(n, _)| n == v).map(|&(_, t)| t)
    }

    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(|(n, _)| n.as_str())
    }
}

impl fmt::Display for Typing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(v, t)| format!("{v}:{t}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Equation {
    pub lhs: OmegaTerm,
    pub rhs: OmegaTerm,
}

impl Equation {
    pub fn new(lhs: OmegaTerm, rhs: OmegaTerm) -> Self {
        Equation { lhs, rhs }
    }

    pub fn vars(&self) -> Vec<String> {
        let mut v = self.lhs.vars();
        for x in self.rhs.vars() {
            if !v.contains(&x) {
                v.push(x);
            }
        }
        v
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualitySet {
    pub name: String,
    pub equations: Vec<Equation>,
}

pub const BUILTIN_SETS: [&str; 6] = [
    "groups",
    "commutative",
    "aperiodic",
    "nilpotent",
    "loctriv",
    "loctriv-weak",
];

impl EqualitySet {
    pub fn builtin(name: &str) -> Result<EqualitySet> {
        let eqs: &[&str] = match name {
            "groups" => &["x^w y = y", "y x^w = y"],
            "commutative" => &["x y = y x"],
            "aperiodic" => &["x^w x = x^w"],
            "nilpotent" => &["x^w y = x^w", "y x^w = x^w"],
            "loctriv" => &["x^w y z^w = x^w z^w"],
            "loctriv-weak" => &["x^w y x^w = x^w"],
            _ => return Err(Error::UnknownVariety(name.to_string())),
        };
        let text: String = eqs.iter().map(|e| format!("{e}\n")).collect();
        let mut set = parse_equations(&text)?;
        set.name = name.to_string();
        Ok(set)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("variety: {}\n", self.name);
        for e in &self.equations {
            out.push_str(&format!("{e}\n"));
        }
        out
    }
}

/// Equations one per line, optional `variety: <name>` header, `#` comments.
pub fn parse_equations(text: &str) -> Result<EqualitySet> {
    let mut name = String::from("custom");
    let mut equations = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("variety:") {
            name = rest.trim().to_string();
            continue;
        }
        let (l, r) = line
            .split_once('=')
            .ok_or_else(|| Error::parse(i + 1, 1, "expected `lhs = rhs`"))?;
        equations.push(Equation::new(parse_term_at(l, i + 1)?, parse_term_at(r, i + 1)?));
    }
    Ok(EqualitySet { name, equations })
}

/// All typings over the five tags under which both sides are well typed, in lexicographic
/// order of tags (variables in first-occurrence order).
pub fn enumerate_typings(lhs: &OmegaTerm, rhs: &OmegaTerm) -> Vec<Typing> {
    let vars = Equation::new(lhs.clone(), rhs.clone()).vars();
    let n = vars.len();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let typing = Typing(vars.iter().cloned().zip(idx.iter().map(|&i| Tag::ALL[i])).collect());
        if lhs.tag_under(&typing).is_ok() && rhs.tag_under(&typing).is_ok() {
            out.push(typing);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < 5 {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProfiniteDependency {
    pub lhs: OmegaTerm,
    pub rhs: OmegaTerm,
    pub typing: Typing,
}

impl ProfiniteDependency {
    pub fn lhs_tag(&self) -> Tag {
        self.lhs.tag_under(&self.typing).expect("well typed")
    }

    pub fn rhs_tag(&self) -> Tag {
        self.rhs.tag_under(&self.typing).expect("well typed")
    }
}

impl fmt::Display for ProfiniteDependency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{} ~ {}:{} with {}",
            self.lhs,
            self.lhs_tag(),
            self.rhs,
            self.rhs_tag(),
            self.typing
        )
    }
}

pub fn induced_dependencies(e: &EqualitySet) -> Vec<ProfiniteDependency> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for eq in &e.equations {
        for typing in enumerate_typings(&eq.lhs, &eq.rhs) {
            let d = ProfiniteDependency {
                lhs: eq.lhs.clone(),
                rhs: eq.rhs.clone(),
                typing,
            };
            if seen.insert(d.clone()) {
                out.push(d);
            }
        }
    }
    out
}

pub fn idempotent_power(s: &FiniteSemigroup, x: usize) -> usize {
    s.idempotent_power(x)
}

/// Value of a term in a semigroup; `assign` follows `vars`.
pub fn eval_in_semigroup(s: &FiniteSemigroup, t: &OmegaTerm, vars: &[String], assign: &[usize]) -> usize {
    let lookup = |v: &str| {
        vars.iter()
            .position(|x| x == v)
            .map(|i| assign[i])
            .ok_or_else(|| Error::IllTypedTerm(format!("unassigned variable {v}")))
    };
    t.fold(&lookup, &|a, b| Ok(s.mul(a, b)), &|a| Ok(s.idempotent_power(a)))
        .expect("all variables assigned")
}

/// Value of a term in a synchronous algebra under an element assignment.
pub fn eval_in_algebra(alg: &SyncAlgebra, t: &OmegaTerm, vars: &[String], assign: &[usize]) -> Result<usize> {
    let lookup = |v: &str| {
        vars.iter()
            .position(|x| x == v)
            .map(|i| assign[i])
            .ok_or_else(|| Error::IllTypedTerm(format!("unassigned variable {v}")))
    };
    let mul = |a: usize, b: usize| {
        alg.mul(a, b)
            .ok_or_else(|| Error::IncompatibleProduct(format!("{} · {}", alg.name(a), alg.name(b))))
    };
    let omega = |a: usize| {
        if alg.tag(a).is_self_compatible() {
            Ok(idempotent_power_by(a, |x, y| alg.mul(*x, *y).expect("self-compatible")))
        } else {
            Err(Error::IllTypedTerm(format!(
                "ω-power of {} of type {}",
                alg.name(a),
                alg.tag(a)
            )))
        }
    };
    t.fold(&lookup, &mul, &omega)
}

/// Lexicographically least assignment on which an equation fails in `s`.
pub fn equation_counterexample(s: &FiniteSemigroup, eq: &Equation) -> Option<Vec<usize>> {
    let vars = eq.vars();
    let n = s.len();
    if n == 0 {
        return None;
    }
    let mut assign = vec![0usize; vars.len()];
    loop {
        if eval_in_semigroup(s, &eq.lhs, &vars, &assign) != eval_in_semigroup(s, &eq.rhs, &vars, &assign) {
            return Some(assign);
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            assign[k] += 1;
            if assign[k] < n {
                break;
            }
            assign[k] = 0;
        }
    }
}

pub fn satisfies_eq(s: &FiniteSemigroup, eq: &Equation) -> bool {
    equation_counterexample(s, eq).is_none()
}

pub fn satisfies_set(s: &FiniteSemigroup, e: &EqualitySet) -> bool {
    e.equations.iter().all(|eq| satisfies_eq(s, eq))
}

/// A failing assignment for a dependency: element names per variable and both values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub assignment: Vec<(String, String)>,
    pub lhs_value: String,
    pub rhs_value: String,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.assignment.iter().map(|(v, x)| format!("{v} := {x}")).collect();
        write!(f, "{} gives {} vs {}", parts.join(", "), self.lhs_value, self.rhs_value)
    }
}

/// Whether every assignment respecting the typing evaluates both sides to dependent
/// elements; the least failing assignment otherwise.
pub fn satisfies(alg: &SyncAlgebra, d: &ProfiniteDependency, guard: usize) -> Result<Option<Counterexample>> {
    let vars: Vec<String> = d.typing.vars().map(String::from).collect();
    if vars.len() > VARIABLE_GUARD {
        return Err(Error::SizeGuardExceeded {
            what: "variables",
            size: vars.len(),
            guard: VARIABLE_GUARD,
        });
    }
    let domains: Vec<Vec<usize>> = d.typing.0.iter().map(|&(_, t)| alg.ids(t).collect()).collect();
    if domains.iter().any(|dom| dom.is_empty()) {
        return Ok(None);
    }
    let total = domains.iter().try_fold(1usize, |acc, dom| acc.checked_mul(dom.len()));
    match total {
        Some(t) if t <= guard => {}
        _ => {
            return Err(Error::SizeGuardExceeded {
                what: "assignments",
                size: total.unwrap_or(usize::MAX),
                guard,
            })
        }
    }
    let mut idx = vec![0usize; vars.len()];
    loop {
        let assign: Vec<usize> = idx.iter().zip(&domains).map(|(&i, dom)| dom[i]).collect();
        let l = eval_in_algebra(alg, &d.lhs, &vars, &assign)?;
        let r = eval_in_algebra(alg, &d.rhs, &vars, &assign)?;
        if !alg.related(l, r) {
            return Ok(Some(Counterexample {
                assignment: vars
                    .iter()
                    .cloned()
                    .zip(assign.iter().map(|&x| alg.name(x).to_string()))
                    .collect(),
                lhs_value: alg.name(l).to_string(),
                rhs_value: alg.name(r).to_string(),
            }));
        }
        let mut k = vars.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < domains[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
