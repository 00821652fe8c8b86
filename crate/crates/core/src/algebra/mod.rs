//! Finite synchronous algebras, unital and positive.

mod compose;
mod text;

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::automata::{Mode, Relation, SyncAutomaton};
use crate::error::{Error, Result};
use crate::semigroup::FiniteSemigroup;
use crate::words::{forced_tag, Alphabet, ClosedSubset, DependentSet, LetterType, PairedWord, Tag, TypedWord};

pub use compose::{
    compose_algebras, compose_recognizers, compose_recognizers_exact, ComposedRecognizer, DEFAULT_COMPOSE_GUARD,
};
pub use text::parse_algebra;

const UNDEFINED: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Unital,
    Positive,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Unital => "unital",
            Variant::Positive => "positive",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Variant> {
        match s {
            "unital" => Ok(Variant::Unital),
            "positive" => Ok(Variant::Positive),
            _ => Err(Error::VariantMismatch(format!("unknown variant `{s}`"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SyncAlgebra {
    variant: Variant,
    set: DependentSet,
    tags: Vec<Tag>,
    names: Vec<String>,
    prod: Vec<u32>,
    units: Option<[usize; 5]>,
}

impl SyncAlgebra {
    /// Assembles an algebra from raw parts. Only shapes are checked here; axioms are
    /// checked by [`SyncAlgebra::validate`].
    pub fn from_fn(
        variant: Variant,
        set: DependentSet,
        names: Vec<String>,
        units: Option<[usize; 5]>,
        mut f: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = set.len();
        let tags: Vec<Tag> = (0..n).map(|i| set.tag_of(i)).collect();
        let mut prod = vec![UNDEFINED; n * n];
        for a in 0..n {
            for b in 0..n {
                if tags[a].compatible(tags[b]) {
                    prod[a * n + b] = f(a, b) as u32;
                }
            }
        }
        SyncAlgebra::from_table(variant, set, names, prod, units)
    }

    pub(crate) fn from_table(
        variant: Variant,
        set: DependentSet,
        names: Vec<String>,
        prod: Vec<u32>,
        units: Option<[usize; 5]>,
    ) -> Result<Self> {
        let n = set.len();
        if names.len() != n || prod.len() != n * n {
            return Err(Error::InvalidAlgebra("table sizes do not match the carrier".into()));
        }
        if prod.iter().any(|&p| p != UNDEFINED && p as usize >= n) {
            return Err(Error::InvalidAlgebra("product out of range".into()));
        }
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::InvalidAlgebra(format!("bad element name `{name}`")));
            }
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(Error::InvalidAlgebra(format!(
                    "elements {j} and {i} share the name `{name}`"
                )));
            }
        }
        let tags: Vec<Tag> = (0..n).map(|i| set.tag_of(i)).collect();
        match (variant, units) {
            (Variant::Positive, Some(_)) => {
                return Err(Error::InvalidAlgebra("positive algebras have no units".into()))
            }
            (Variant::Unital, None) => return Err(Error::InvalidAlgebra("units are missing".into())),
            (Variant::Unital, Some(u)) => {
                for t in Tag::ALL {
                    if u[t.index()] >= n || tags[u[t.index()]] != t {
                        return Err(Error::InvalidAlgebra(format!("unit of type {t} has the wrong type")));
                    }
                }
            }
            _ => {}
        }
        Ok(SyncAlgebra {
            variant,
            set,
            tags,
            names,
            prod,
            units,
        })
    }

    /// One element per type, every pair dependent.
    pub fn trivial(variant: Variant) -> Self {
        let mut set = DependentSet::discrete([1; 5]);
        for a in 0..5 {
            for b in 0..5 {
                set.relate(a, b);
            }
        }
        let names = Tag::ALL.iter().map(|t| t.name().to_string()).collect();
        let units = (variant == Variant::Unital).then_some([0, 1, 2, 3, 4]);
        SyncAlgebra::from_fn(variant, set, names, units, |a, b| {
            Tag::ALL[a].concat(Tag::ALL[b]).expect("compatible").index()
        })
        .expect("well-shaped")
    }

    /// Trivial monoid on `ll`, `Z/p` on `lb` and `ll->lb`, `Z/q` on `bl` and `ll->bl`.
    pub fn zpq(p: usize, q: usize) -> Self {
        assert!(p > 0 && q > 0);
        let modulus = |t: Tag| match t {
            Tag::Ll => 1,
            Tag::Lb | Tag::LlLb => p,
            Tag::Bl | Tag::LlBl => q,
        };
        let set0 = DependentSet::discrete(Tag::ALL.map(modulus));
        let mut set = set0.clone();
        let n = set.len();
        let value = |i: usize| set0.local(i);
        let side = |t: Tag| match t {
            Tag::Ll => 0,
            Tag::Lb | Tag::LlLb => 1,
            Tag::Bl | Tag::LlBl => 2,
        };
        for a in 0..n {
            for b in 0..n {
                let (ta, tb) = (set0.tag_of(a), set0.tag_of(b));
                let both_zero = value(a) == 0 && value(b) == 0;
                if both_zero || (side(ta) == side(tb) && value(a) == value(b)) {
                    set.relate(a, b);
                }
            }
        }
        let names = (0..n).map(|i| format!("{}:{}", set0.tag_of(i), value(i))).collect();
        let units = Some(Tag::ALL.map(|t| set0.id(t, 0)));
        SyncAlgebra::from_fn(Variant::Unital, set, names, units, |a, b| {
            let t = set0.tag_of(a).concat(set0.tag_of(b)).expect("compatible");
            set0.id(t, (value(a) + value(b)) % modulus(t))
        })
        .expect("well-shaped")
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn dep(&self) -> &DependentSet {
        &self.set
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.set.related(a, b)
    }

    pub fn tag(&self, id: usize) -> Tag {
        self.tags[id]
    }

    pub fn ids(&self, t: Tag) -> std::ops::Range<usize> {
        self.set.ids(t)
    }

    pub fn size(&self, t: Tag) -> usize {
        self.set.size(t)
    }

    pub fn sizes(&self) -> [usize; 5] {
        self.set.sizes()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn units(&self) -> Option<[usize; 5]> {
        self.units
    }

    pub fn unit(&self, t: Tag) -> Option<usize> {
        self.units.map(|u| u[t.index()])
    }

    pub fn is_unit(&self, id: usize) -> bool {
        self.units.is_some_and(|u| u.contains(&id))
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        let p = self.prod[a * self.len() + b];
        (p != UNDEFINED).then_some(p as usize)
    }

    /// Number of unordered pairs of distinct dependent elements.
    pub fn dep_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| self.related(a, b))
            .collect()
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        assert_eq!(names.len(), self.len());
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if let Some(j) = seen.insert(name.as_str(), i) {
                return Err(Error::InvalidAlgebra(format!(
                    "elements {j} and {i} share the name `{name}`"
                )));
            }
        }
        self.names = names;
        Ok(self)
    }

    /// The underlying monoid (unital) or semigroup (positive) of a self-compatible type.
    pub fn underlying(&self, t: Tag) -> FiniteSemigroup {
        assert!(t.is_self_compatible());
        let r = self.ids(t);
        let off = r.start;
        let k = r.len();
        FiniteSemigroup::from_fn(k, |a, b| self.mul(a + off, b + off).expect("self-compatible") - off)
            .with_names(r.map(|i| self.names[i].clone()).collect())
    }

    /// All axiom violations, at most one witness per axiom.
    pub fn validate(&self) -> Vec<Violation> {
        let n = self.len();
        let out = std::cell::RefCell::new(Vec::<Violation>::new());
        let report = |axiom: Axiom, ids: &[usize]| {
            let mut out = out.borrow_mut();
            if !out.iter().any(|v| v.axiom == axiom) {
                out.push(Violation {
                    axiom,
                    witness: ids.iter().map(|&i| self.names[i].clone()).collect(),
                });
            }
        };
        if let Some(a) = (0..n).find(|&a| !self.related(a, a)) {
            report(Axiom::DepReflexive, &[a]);
        }
        if let Some((a, b)) = self.set.symmetry_violation() {
            report(Axiom::DepSymmetric, &[a, b]);
        }
        if let Some((a, b)) = self.set.same_tag_violation() {
            report(Axiom::DepSameType, &[a, b]);
        }
        for a in 0..n {
            for b in 0..n {
                let want = self.tags[a].concat(self.tags[b]);
                match (want, self.mul(a, b)) {
                    (Some(_), None) | (None, Some(_)) => report(Axiom::ProductDomain, &[a, b]),
                    (Some(t), Some(c)) if self.tags[c] != t => report(Axiom::ProductType, &[a, b, c]),
                    _ => {}
                }
            }
        }
        if out
            .borrow()
            .iter()
            .any(|v| matches!(v.axiom, Axiom::ProductDomain | Axiom::ProductType))
        {
            return out.into_inner();
        }
        'assoc: for x in 0..n {
            for y in 0..n {
                let Some(xy) = self.mul(x, y) else { continue };
                for z in 0..n {
                    let Some(xy_z) = self.mul(xy, z) else {
                        continue;
                    };
                    let x_yz = self.mul(y, z).and_then(|yz| self.mul(x, yz));
                    if x_yz != Some(xy_z) {
                        report(Axiom::Associativity, &[x, y, z]);
                        break 'assoc;
                    }
                }
            }
        }
        'mono: for x in 0..n {
            for x2 in 0..n {
                if x == x2 || !self.related(x, x2) {
                    continue;
                }
                for y in 0..n {
                    if let (Some(p), Some(p2)) = (self.mul(x, y), self.mul(x2, y)) {
                        if !self.related(p, p2) {
                            report(Axiom::Monotonicity, &[x, x2, y]);
                            break 'mono;
                        }
                    }
                    if let (Some(p), Some(p2)) = (self.mul(y, x), self.mul(y, x2)) {
                        if !self.related(p, p2) {
                            report(Axiom::Monotonicity, &[y, x, x2]);
                            break 'mono;
                        }
                    }
                }
            }
        }
        if let Some(units) = self.units {
            'unit: for t in Tag::ALL {
                let u = units[t.index()];
                for x in 0..n {
                    let left = self.mul(u, x).is_some_and(|p| !self.related(p, x));
                    let right = self.mul(x, u).is_some_and(|p| !self.related(p, x));
                    if left || right {
                        report(Axiom::Unit, &[u, x]);
                        break 'unit;
                    }
                }
            }
            for (composite, beta) in [(Tag::LlLb, Tag::Lb), (Tag::LlBl, Tag::Bl)] {
                let (uc, ul, ub) = (units[composite.index()], units[Tag::Ll.index()], units[beta.index()]);
                if self.mul(ul, ub) != Some(uc) {
                    report(Axiom::UnitComposite, &[uc, ul, ub]);
                }
            }
        }
        out.into_inner()
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Cartesian product, type by type.
    pub fn product(&self, other: &SyncAlgebra) -> Result<SyncAlgebra> {
        if self.variant != other.variant {
            return Err(Error::VariantMismatch(format!("{} vs {}", self.variant, other.variant)));
        }
        let sizes = Tag::ALL.map(|t| self.size(t) * other.size(t));
        let mut set = DependentSet::discrete(sizes);
        let pair_id = |t: Tag, a: usize, b: usize| {
            set_id(
                &sizes,
                t,
                (a - self.ids(t).start) * other.size(t) + (b - other.ids(t).start),
            )
        };
        let mut coords = Vec::with_capacity(set.len());
        for t in Tag::ALL {
            for a in self.ids(t) {
                for b in other.ids(t) {
                    coords.push((a, b));
                }
            }
        }
        let n = coords.len();
        for i in 0..n {
            for j in 0..n {
                let ((a, b), (a2, b2)) = (coords[i], coords[j]);
                if self.related(a, a2) && other.related(b, b2) {
                    set.set_related(i, j, true);
                }
            }
        }
        let names = coords
            .iter()
            .map(|&(a, b)| format!("<{},{}>", self.names[a], other.names[b]))
            .collect();
        let units = match (self.units, other.units) {
            (Some(ua), Some(ub)) => Some(Tag::ALL.map(|t| pair_id(t, ua[t.index()], ub[t.index()]))),
            _ => None,
        };
        SyncAlgebra::from_fn(self.variant, set, names, units, |i, j| {
            let ((a, b), (a2, b2)) = (coords[i], coords[j]);
            let (pa, pb) = (
                self.mul(a, a2).expect("compatible"),
                other.mul(b, b2).expect("compatible"),
            );
            pair_id(self.tags[pa], pa, pb)
        })
    }

    /// Positive algebra with the same carrier minus the units' special status.
    pub fn forget_units(&self) -> SyncAlgebra {
        let mut out = self.clone();
        out.variant = Variant::Positive;
        out.units = None;
        out
    }

    /// Restriction to a subset closed under products (and containing the units).
    pub fn restrict(&self, keep: &[bool]) -> Result<(SyncAlgebra, Vec<usize>)> {
        let n = self.len();
        let old: Vec<usize> = (0..n).filter(|&i| keep[i]).collect();
        let mut pos = vec![usize::MAX; n];
        for (k, &i) in old.iter().enumerate() {
            pos[i] = k;
        }
        let sizes = Tag::ALL.map(|t| self.ids(t).filter(|&i| keep[i]).count());
        let mut set = DependentSet::discrete(sizes);
        for (k, &i) in old.iter().enumerate() {
            for (l, &j) in old.iter().enumerate() {
                set.set_related(k, l, self.related(i, j));
            }
        }
        let units = match self.units {
            Some(u) => {
                if u.iter().any(|&x| !keep[x]) {
                    return Err(Error::InvalidAlgebra("restriction drops a unit".into()));
                }
                Some(u.map(|x| pos[x]))
            }
            None => None,
        };
        let mut escaped = None;
        let alg = SyncAlgebra::from_fn(
            self.variant,
            set,
            old.iter().map(|&i| self.names[i].clone()).collect(),
            units,
            |k, l| {
                let p = self.mul(old[k], old[l]).expect("compatible");
                if pos[p] == usize::MAX {
                    escaped = Some(p);
                    0
                } else {
                    pos[p]
                }
            },
        )?;
        if let Some(p) = escaped {
            return Err(Error::InvalidAlgebra(format!(
                "product {} leaves the subset",
                self.names[p]
            )));
        }
        Ok((alg, pos))
    }

    /// Classes of the transitive closure of dep, for the unit fact.
    pub fn dep_components(&self) -> Vec<usize> {
        self.set.components()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph algebra {\n  node [shape=box];\n");
        for t in Tag::ALL {
            s.push_str(&format!("  subgraph \"cluster_{t}\" {{\n    label=\"{t}\";\n"));
            for i in self.ids(t) {
                s.push_str(&format!(
                    "    n{i} [label=\"{}\"];\n",
                    self.names[i].replace('"', "\\\"")
                ));
            }
            s.push_str("  }\n");
        }
        for (a, b) in self.dep_pairs() {
            s.push_str(&format!("  n{a} -- n{b} [style=dashed];\n"));
        }
        s.push_str("}\n");
        s
    }
}

fn set_id(sizes: &[usize; 5], t: Tag, local: usize) -> usize {
    sizes[..t.index()].iter().sum::<usize>() + local
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    ProductDomain,
    ProductType,
    Associativity,
    Monotonicity,
    Unit,
    UnitComposite,
    DepReflexive,
    DepSymmetric,
    DepSameType,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::ProductDomain => "product undefined on a compatible pair or defined on an incompatible one",
            Axiom::ProductType => "product has the wrong type",
            Axiom::Associativity => "associativity",
            Axiom::Monotonicity => "monotonicity",
            Axiom::Unit => "unit law",
            Axiom::UnitComposite => "composite unit is not the product of units",
            Axiom::DepReflexive => "dep not reflexive",
            Axiom::DepSymmetric => "dep not symmetric",
            Axiom::DepSameType => "dep relates distinct elements of the same type",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.witness.join(", "))
    }
}

/// A morphism from the free algebra over Σ□, given by its letter images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    alphabet: Alphabet,
    target: SyncAlgebra,
    images: Vec<usize>,
    accepting: Option<ClosedSubset>,
}

impl AlgebraMorphism {
    pub fn new(
        alphabet: Alphabet,
        target: SyncAlgebra,
        images: Vec<usize>,
        accepting: Option<ClosedSubset>,
    ) -> Result<Self> {
        if images.len() != alphabet.num_letters() {
            return Err(Error::InvalidAlgebra("one image per letter is required".into()));
        }
        for (l, &img) in images.iter().enumerate() {
            let want = alphabet.letter_type_of(l).tag();
            if img >= target.len() || target.tag(img) != want {
                return Err(Error::InvalidAlgebra(format!(
                    "image of {} must have type {want}",
                    alphabet.letter(l)
                )));
            }
        }
        if let Some(acc) = &accepting {
            if acc.members().len() != target.len() {
                return Err(Error::InvalidAlgebra("accepting set has the wrong size".into()));
            }
            if let Some((a, b)) = acc.closure_violation(target.dep()) {
                return Err(Error::NonClosedAccepting(
                    target.name(a).to_string(),
                    target.name(b).to_string(),
                ));
            }
        }
        Ok(AlgebraMorphism {
            alphabet,
            target,
            images,
            accepting,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn target(&self) -> &SyncAlgebra {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn accepting(&self) -> Option<&ClosedSubset> {
        self.accepting.as_ref()
    }

    pub fn with_accepting(self, acc: ClosedSubset) -> Result<Self> {
        AlgebraMorphism::new(self.alphabet, self.target, self.images, Some(acc))
    }

    /// Value of a non-empty well-formed word at its forced type.
    fn fold(&self, word: &[usize]) -> usize {
        let mut cur = self.images[word[0]];
        for &l in &word[1..] {
            cur = self.target.mul(cur, self.images[l]).expect("well-formed word");
        }
        cur
    }

    /// Value of a word (letter indices) read with type `tag`.
    pub fn eval_indices(&self, word: &[usize], tag: Tag) -> Result<usize> {
        let shown = || self.alphabet.decode_indices(word).to_string();
        let bad = || Error::BadTypedWord {
            word: shown(),
            tag: tag.to_string(),
        };
        let forced = forced_tag(word.iter().map(|&l| self.alphabet.letter_type_of(l))).ok_or_else(bad)?;
        let Some(forced) = forced else {
            return self.target.unit(tag).ok_or(Error::EmptyWordInPositive);
        };
        if forced == tag {
            return Ok(self.fold(word));
        }
        if self.target.variant == Variant::Positive || !tag.admits(forced) {
            return Err(bad());
        }
        let x = self.fold(word);
        let unit = |t: Tag| self.target.unit(t).expect("unital");
        let lifted = match forced {
            Tag::Ll => self
                .target
                .mul(x, unit(if tag == Tag::LlLb { Tag::Lb } else { Tag::Bl })),
            _ => self.target.mul(unit(Tag::Ll), x),
        };
        Ok(lifted.expect("compatible"))
    }

    pub fn eval(&self, w: &TypedWord) -> Result<usize> {
        let idx = self.alphabet.encode_indices(&w.word)?;
        self.eval_indices(&idx, w.tag)
    }

    /// Value at the forced type; `None` for words that are not well-formed, or for the empty
    /// word in a positive algebra.
    pub fn eval_forced(&self, word: &[usize]) -> Option<usize> {
        match forced_tag(word.iter().map(|&l| self.alphabet.letter_type_of(l)))? {
            None => self.target.unit(Tag::Ll),
            Some(_) => Some(self.fold(word)),
        }
    }

    pub fn accepts_indices(&self, word: &[usize]) -> bool {
        let acc = self.accepting.as_ref().expect("morphism has an accepting set");
        self.eval_forced(word).is_some_and(|x| acc.contains(x))
    }

    pub fn accepts_pair(&self, u: &str, v: &str) -> bool {
        let w = crate::words::encode_word(u, v);
        match self.alphabet.encode_indices(&w) {
            Ok(idx) => self.accepts_indices(&idx),
            Err(_) => false,
        }
    }

    /// Shortlex-least preimage of every element, `None` if unreachable.
    pub fn minimal_preimages(&self) -> Vec<Option<Vec<usize>>> {
        let alg = &self.target;
        let mut best: Vec<Option<Vec<usize>>> = vec![None; alg.len()];
        let better = |cand: &[usize], cur: &Option<Vec<usize>>| match cur {
            None => true,
            Some(c) => (cand.len(), cand) < (c.len(), c.as_slice()),
        };
        if let Some(units) = alg.units {
            for u in units {
                best[u] = Some(Vec::new());
            }
        }
        let mut seen = vec![false; alg.len()];
        let mut queue: VecDeque<(usize, Vec<usize>)> = VecDeque::new();
        for l in 0..self.alphabet.num_letters() {
            let x = self.images[l];
            if !seen[x] {
                seen[x] = true;
                queue.push_back((x, vec![l]));
            }
        }
        let mut reached: Vec<(usize, Vec<usize>)> = Vec::new();
        while let Some((x, w)) = queue.pop_front() {
            for l in 0..self.alphabet.num_letters() {
                if let Some(y) = alg.mul(x, self.images[l]) {
                    if !seen[y] {
                        seen[y] = true;
                        let mut w2 = w.clone();
                        w2.push(l);
                        queue.push_back((y, w2));
                    }
                }
            }
            reached.push((x, w));
        }
        for (x, w) in reached {
            let mut cands = vec![x];
            if let Some(units) = alg.units {
                match alg.tag(x) {
                    Tag::Ll => {
                        cands.push(alg.mul(x, units[Tag::Lb.index()]).expect("compatible"));
                        cands.push(alg.mul(x, units[Tag::Bl.index()]).expect("compatible"));
                    }
                    Tag::Lb | Tag::Bl => cands.push(alg.mul(units[Tag::Ll.index()], x).expect("compatible")),
                    _ => {}
                }
            }
            for c in cands {
                if better(&w, &best[c]) {
                    best[c] = Some(w.clone());
                }
            }
        }
        best
    }

    pub fn is_surjective(&self) -> bool {
        self.minimal_preimages().iter().all(Option::is_some)
    }

    /// Renames reachable elements `type:word` after their shortlex-least preimage.
    pub fn rename_by_preimages(self) -> Result<Self> {
        let pre = self.minimal_preimages();
        let names = pre
            .iter()
            .enumerate()
            .map(|(i, w)| match w {
                Some(w) if w.is_empty() => format!("{}:1", self.target.tag(i)),
                Some(w) => format!("{}:{}", self.target.tag(i), self.alphabet.decode_indices(w)),
                None => self.target.name(i).to_string(),
            })
            .collect();
        let target = self.target.with_names(names)?;
        Ok(AlgebraMorphism { target, ..self })
    }

    /// Composes with a map of carriers onto `target` (e.g. a quotient projection).
    pub fn map_through(&self, target: SyncAlgebra, f: &[usize]) -> Result<AlgebraMorphism> {
        let images = self.images.iter().map(|&x| f[x]).collect();
        let accepting = match &self.accepting {
            None => None,
            Some(acc) => {
                let mut members = vec![false; target.len()];
                let mut seen = vec![false; target.len()];
                for x in 0..self.target.len() {
                    let y = f[x];
                    if seen[y] && members[y] != acc.contains(x) {
                        return Err(Error::NotACongruence(format!(
                            "class of {} is split by the accepting set",
                            self.target.name(x)
                        )));
                    }
                    seen[y] = true;
                    members[y] = acc.contains(x);
                }
                Some(ClosedSubset::from_raw(members))
            }
        };
        AlgebraMorphism::new(self.alphabet.clone(), target, images, accepting)
    }
}

/// The synchronous algebra induced by a monoid or semigroup, restricted to given carriers.
#[derive(Clone, Debug)]
pub struct Induced {
    pub algebra: SyncAlgebra,
    /// Underlying semigroup element of each algebra element.
    pub origin: Vec<usize>,
}

impl Induced {
    pub fn lookup(&self, t: Tag, elem: usize) -> Option<usize> {
        self.algebra.ids(t).find(|&i| self.origin[i] == elem)
    }

    /// Free extension of a letter map into the underlying semigroup.
    pub fn morphism(&self, alphabet: &Alphabet, letter_map: &[usize]) -> Result<AlgebraMorphism> {
        let images = letter_map
            .iter()
            .enumerate()
            .map(|(l, &e)| {
                let t = alphabet.letter_type_of(l).tag();
                self.lookup(t, e).ok_or_else(|| {
                    Error::InvalidAlgebra(format!("image of {} is missing from type {t}", alphabet.letter(l)))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraMorphism::new(alphabet.clone(), self.algebra.clone(), images, None)
    }
}

/// Copies of `s` for every type (or the given carriers), dependent when they share an
/// underlying element. Unital mode requires an identity, used as every unit.
pub fn induced(s: &FiniteSemigroup, variant: Variant, carriers: Option<&[Vec<usize>; 5]>) -> Result<Induced> {
    let full: Vec<usize> = (0..s.len()).collect();
    let carriers: [Vec<usize>; 5] = match carriers {
        Some(c) => c.clone(),
        None => std::array::from_fn(|_| full.clone()),
    };
    let sizes = Tag::ALL.map(|t| carriers[t.index()].len());
    let mut set = DependentSet::discrete(sizes);
    let origin: Vec<usize> = carriers.iter().flatten().copied().collect();
    let n = origin.len();
    for a in 0..n {
        for b in 0..n {
            if origin[a] == origin[b] {
                set.set_related(a, b, true);
            }
        }
    }
    let find = |t: Tag, e: usize| {
        carriers[t.index()]
            .iter()
            .position(|&x| x == e)
            .map(|k| set_id(&sizes, t, k))
    };
    let units = match variant {
        Variant::Positive => None,
        Variant::Unital => {
            let one = s
                .identity()
                .ok_or_else(|| Error::InvalidAlgebra("unital induction needs a monoid".into()))?;
            let u = Tag::ALL.map(|t| find(t, one));
            if u.iter().any(Option::is_none) {
                return Err(Error::InvalidAlgebra("identity missing from a carrier".into()));
            }
            Some(u.map(|x| x.expect("checked")))
        }
    };
    let names = (0..n)
        .map(|i| format!("{}:{}", set.tag_of(i), s.name(origin[i])))
        .collect();
    let tags: Vec<Tag> = (0..n).map(|i| set.tag_of(i)).collect();
    let mut escaped = None;
    let algebra = SyncAlgebra::from_fn(variant, set, names, units, |a, b| {
        let t = tags[a].concat(tags[b]).expect("compatible");
        let e = s.mul(origin[a], origin[b]);
        find(t, e).unwrap_or_else(|| {
            escaped = Some((t, e));
            0
        })
    })?;
    if let Some((t, e)) = escaped {
        return Err(Error::InvalidAlgebra(format!(
            "product {} missing from type {t}",
            s.name(e)
        )));
    }
    Ok(Induced { algebra, origin })
}

/// Binary relation on the carrier of an algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Congruence {
    n: usize,
    rel: Vec<bool>,
}

impl Congruence {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        Congruence {
            n,
            rel: (0..n * n).map(|i| f(i / n, i % n)).collect(),
        }
    }

    pub fn total(n: usize) -> Self {
        Congruence::from_fn(n, |_, _| true)
    }

    pub fn from_dep(d: &DependentSet) -> Self {
        Congruence::from_fn(d.len(), |a, b| d.related(a, b))
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.rel[a * self.n + b]
    }

    /// Checks the congruence conditions; returns the class representative of each element
    /// (least same-type related element).
    pub fn check(&self, alg: &SyncAlgebra) -> Result<Vec<usize>> {
        let n = alg.len();
        if self.n != n {
            return Err(Error::NotACongruence("size mismatch".into()));
        }
        let name = |i: usize| alg.name(i);
        for a in 0..n {
            if !self.related(a, a) {
                return Err(Error::NotACongruence(format!("not reflexive at {}", name(a))));
            }
            for b in 0..n {
                if self.related(a, b) != self.related(b, a) {
                    return Err(Error::NotACongruence(format!(
                        "not symmetric on {}, {}",
                        name(a),
                        name(b)
                    )));
                }
                if alg.related(a, b) && !self.related(a, b) {
                    return Err(Error::NotACongruence(format!(
                        "not coarser than dep on {}, {}",
                        name(a),
                        name(b)
                    )));
                }
            }
        }
        let rep: Vec<usize> = (0..n)
            .map(|a| alg.ids(alg.tag(a)).find(|&b| self.related(a, b)).expect("reflexive"))
            .collect();
        for a in 0..n {
            for b in alg.ids(alg.tag(a)) {
                if self.related(a, b) != (rep[a] == rep[b]) {
                    return Err(Error::NotACongruence(format!(
                        "not transitive on type {} at {}, {}",
                        alg.tag(a),
                        name(a),
                        name(b)
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.related(a, b) != self.related(rep[a], rep[b]) {
                    return Err(Error::NotACongruence(format!(
                        "not locally transitive: {} vs {}",
                        name(a),
                        name(b)
                    )));
                }
                if let Some(p) = alg.mul(a, b) {
                    let q = alg.mul(rep[a], b).expect("same type");
                    let r = alg.mul(a, rep[b]).expect("same type");
                    if rep[p] != rep[q] || rep[p] != rep[r] {
                        return Err(Error::NotACongruence(format!(
                            "products of {} and {} are not compatible with the relation",
                            name(a),
                            name(b)
                        )));
                    }
                }
            }
        }
        Ok(rep)
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: SyncAlgebra,
    pub projection: Vec<usize>,
}

/// Quotient by a congruence; classes are taken within each type.
pub fn quotient(alg: &SyncAlgebra, cong: &Congruence) -> Result<Quotient> {
    let rep = cong.check(alg)?;
    let n = alg.len();
    let mut projection = vec![usize::MAX; n];
    let mut reps: Vec<usize> = Vec::new();
    let mut sizes = [0usize; 5];
    for t in Tag::ALL {
        for a in alg.ids(t) {
            if rep[a] == a {
                projection[a] = reps.len();
                reps.push(a);
                sizes[t.index()] += 1;
            }
        }
    }
    for a in 0..n {
        projection[a] = projection[rep[a]];
    }
    let mut set = DependentSet::discrete(sizes);
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            set.set_related(i, j, cong.related(a, b));
        }
    }
    let units = alg.units.map(|u| u.map(|x| projection[x]));
    let names = reps.iter().map(|&a| alg.names[a].clone()).collect();
    let algebra = SyncAlgebra::from_fn(alg.variant, set, names, units, |i, j| {
        projection[alg.mul(reps[i], reps[j]).expect("compatible")]
    })?;
    Ok(Quotient { algebra, projection })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConsolElement {
    Element(usize),
    Unit,
    Zero,
}

/// Flattening of an algebra into a semigroup with a zero.
#[derive(Clone, Debug)]
pub struct Consolidation {
    pub semigroup: FiniteSemigroup,
    pub origin: Vec<ConsolElement>,
    /// Consolidated element of each algebra element.
    pub class_of: Vec<usize>,
    pub zero: usize,
    pub unit: Option<usize>,
}

/// Merges the five units (unital only), adds a zero and sends undefined products to it.
pub fn consolidate(alg: &SyncAlgebra) -> Consolidation {
    let n = alg.len();
    let mut origin = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for a in 0..n {
        if !alg.is_unit(a) {
            class_of[a] = origin.len();
            origin.push(ConsolElement::Element(a));
        }
    }
    let unit = alg.units.map(|u| {
        let id = origin.len();
        origin.push(ConsolElement::Unit);
        for x in u {
            class_of[x] = id;
        }
        id
    });
    let zero = origin.len();
    origin.push(ConsolElement::Zero);
    let rep = |c: usize| match origin[c] {
        ConsolElement::Element(a) => a,
        ConsolElement::Unit => alg.unit(Tag::Ll).expect("unital"),
        ConsolElement::Zero => unreachable!(),
    };
    let m = origin.len();
    let semigroup = FiniteSemigroup::from_fn(m, |x, y| {
        if x == zero || y == zero {
            zero
        } else if Some(x) == unit {
            y
        } else if Some(y) == unit {
            x
        } else {
            alg.mul(rep(x), rep(y)).map_or(zero, |p| class_of[p])
        }
    })
    .with_names(
        origin
            .iter()
            .map(|o| match o {
                ConsolElement::Element(a) => alg.names[*a].clone(),
                ConsolElement::Unit => "1".to_string(),
                ConsolElement::Zero => "0".to_string(),
            })
            .collect(),
    );
    Consolidation {
        semigroup,
        origin,
        class_of,
        zero,
        unit,
    }
}

impl Consolidation {
    /// Consolidated morphism on a Σ□-word, defined case by case on its shape.
    pub fn eval(&self, m: &AlgebraMorphism, word: &[usize]) -> Option<usize> {
        let types = word.iter().map(|&l| m.alphabet.letter_type_of(l));
        match forced_tag(types) {
            None => Some(self.zero),
            Some(None) => self.unit,
            Some(Some(_)) => Some(self.class_of[m.fold(word)]),
        }
    }

    /// Fold of the consolidated letter images.
    pub fn eval_by_product(&self, m: &AlgebraMorphism, word: &[usize]) -> Option<usize> {
        let mut it = word.iter().map(|&l| self.class_of[m.images[l]]);
        let first = it.next().or(self.unit)?;
        Some(it.fold(first, |acc, x| self.semigroup.mul(acc, x)))
    }
}

/// DFA over Σ□ whose states are the algebra elements plus a start state and a sink.
pub fn recognizer_to_dfa(m: &AlgebraMorphism) -> Result<Relation> {
    let acc = m
        .accepting
        .as_ref()
        .ok_or_else(|| Error::InvalidAlgebra("morphism has no accepting set".into()))?;
    if let Some((a, b)) = acc.closure_violation(m.target.dep()) {
        return Err(Error::NonClosedAccepting(
            m.target.name(a).into(),
            m.target.name(b).into(),
        ));
    }
    let alg = &m.target;
    let mut aut = SyncAutomaton::new(m.alphabet.clone());
    let start = aut.add_state("start");
    let states: Vec<usize> = (0..alg.len()).map(|i| aut.add_state(alg.name(i))).collect();
    let sink = aut.add_state("0");
    aut.set_initial(start);
    let mode = match alg.units {
        Some(u) => {
            aut.set_final(start, acc.contains(u[Tag::Ll.index()]));
            Mode::Star
        }
        None => Mode::Plus,
    };
    for x in 0..alg.len() {
        aut.set_final(states[x], acc.contains(x));
    }
    for l in 0..m.alphabet.num_letters() {
        let g = m.images[l];
        aut.add_transition(start, l, states[g]);
        aut.add_transition(sink, l, sink);
        for x in 0..alg.len() {
            let t = alg.mul(x, g).map_or(sink, |y| states[y]);
            aut.add_transition(states[x], l, t);
        }
    }
    Ok(Relation::new(aut, mode))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// Residual of `c` by `x`: every `y` congruent (under the syntactic congruence of `c`)
/// to some `y'` with `x·y'` (left) or `y'·x` (right) in `c`.
///
/// The congruence is not transitive across types, so the result need not be closed
/// even when `c` is.
pub fn residual(side: Side, alg: &SyncAlgebra, c: &ClosedSubset, x: usize) -> ClosedSubset {
    let cong = crate::syntactic::syntactic_congruence(alg, c);
    let n = alg.len();
    let naive: Vec<bool> = (0..n)
        .map(|y| {
            let p = match side {
                Side::Left => alg.mul(x, y),
                Side::Right => alg.mul(y, x),
            };
            p.is_some_and(|p| c.contains(p))
        })
        .collect();
    let members = (0..n)
        .map(|y| (0..n).any(|y2| naive[y2] && cong.related(y, y2)))
        .collect();
    ClosedSubset::from_raw(members)
}

/// Whether some type-preserving bijection preserves products, dep and units.
pub fn is_isomorphic(a: &SyncAlgebra, b: &SyncAlgebra) -> bool {
    find_isomorphism(a, b).is_some()
}

/// A type-preserving isomorphism `a -> b` as an id map, if one exists.
pub fn find_isomorphism(a: &SyncAlgebra, b: &SyncAlgebra) -> Option<Vec<usize>> {
    if a.variant != b.variant || a.sizes() != b.sizes() || a.dep_pairs().len() != b.dep_pairs().len() {
        return None;
    }
    let n = a.len();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if let (Some(ua), Some(ub)) = (a.units, b.units) {
        for t in Tag::ALL {
            map[ua[t.index()]] = ub[t.index()];
            used[ub[t.index()]] = true;
        }
    }
    let order: Vec<usize> = (0..n).filter(|&i| map[i] == usize::MAX).collect();
    let consistent = |map: &[usize], x: usize| -> bool {
        (0..n).filter(|&y| map[y] != usize::MAX).all(|y| {
            let checks = [(x, y), (y, x)];
            checks.iter().all(|&(p, q)| {
                if a.related(p, q) != b.related(map[p], map[q]) {
                    return false;
                }
                match a.mul(p, q) {
                    Some(r) if map[r] != usize::MAX => b.mul(map[p], map[q]) == Some(map[r]),
                    _ => true,
                }
            })
        })
    };
    fn search(
        k: usize,
        order: &[usize],
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        a: &SyncAlgebra,
        b: &SyncAlgebra,
        consistent: &dyn Fn(&[usize], usize) -> bool,
    ) -> bool {
        if k == order.len() {
            return (0..a.len()).all(|x| consistent(map, x));
        }
        let x = order[k];
        for y in b.ids(a.tag(x)) {
            if used[y] {
                continue;
            }
            map[x] = y;
            used[y] = true;
            if consistent(map, x) && search(k + 1, order, map, used, a, b, consistent) {
                return true;
            }
            map[x] = usize::MAX;
            used[y] = false;
        }
        false
    }
    search(0, &order, &mut map, &mut used, a, b, &consistent).then_some(map)
}

/// Morphism sending every letter of a two-letter alphabet `{a, b}` into `Z_{p,q}`: `ll` letters
/// to 0, padded letters to 1.
pub fn zpq_morphism(alphabet: &Alphabet, p: usize, q: usize) -> AlgebraMorphism {
    let alg = SyncAlgebra::zpq(p, q);
    let images = (0..alphabet.num_letters())
        .map(|l| match alphabet.letter_type_of(l) {
            LetterType::Ll => alg.ids(Tag::Ll).start,
            LetterType::Lb => alg.ids(Tag::Lb).start + 1 % p,
            LetterType::Bl => alg.ids(Tag::Bl).start + 1 % q,
        })
        .collect();
    AlgebraMorphism::new(alphabet.clone(), alg, images, None).expect("typed images")
}

/// Shortlex display of a word given as letter indices.
pub fn show_word(alphabet: &Alphabet, w: &[usize]) -> String {
    if w.is_empty() {
        "1".into()
    } else {
        alphabet.decode_indices(w).to_string()
    }
}

/// Parses a typed word `word:tag` or `word` (forced type).
pub fn parse_typed_word(s: &str) -> Result<TypedWord> {
    match s.rsplit_once(':') {
        Some((w, t)) if t.parse::<Tag>().is_ok() => TypedWord::new(PairedWord::parse(w)?, t.parse()?),
        _ => TypedWord::forced(PairedWord::parse(s)?),
    }
}

#[cfg(test)]
mod tests;
