//! Finite semigroups and monoids given by multiplication tables.

use std::collections::HashMap;
use std::hash::Hash;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroup {
    n: usize,
    table: Vec<usize>,
    names: Vec<String>,
}

impl FiniteSemigroup {
    pub fn new(n: usize, table: Vec<usize>) -> Result<Self> {
        if table.len() != n * n || table.iter().any(|&x| x >= n) {
            return Err(Error::InvalidAlgebra(format!(
                "table of a semigroup of order {n} must have {} entries below {n}",
                n * n
            )));
        }
        Ok(FiniteSemigroup {
            n,
            table,
            names: (0..n).map(|i| i.to_string()).collect(),
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Self {
        let table = (0..n * n).map(|i| f(i / n, i % n)).collect();
        FiniteSemigroup {
            n,
            table,
            names: (0..n).map(|i| i.to_string()).collect(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.n);
        self.names = names;
        self
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn associativity_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    pub fn is_associative(&self) -> bool {
        self.associativity_violation().is_none()
    }

    pub fn identity(&self) -> Option<usize> {
        (0..self.n).find(|&e| (0..self.n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    pub fn zero(&self) -> Option<usize> {
        (0..self.n).find(|&z| (0..self.n).all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    pub fn is_idempotent(&self, x: usize) -> bool {
        self.mul(x, x) == x
    }

    pub fn power(&self, x: usize, k: usize) -> usize {
        assert!(k >= 1);
        (1..k).fold(x, |acc, _| self.mul(acc, x))
    }

    pub fn idempotent_power(&self, x: usize) -> usize {
        idempotent_power_by(x, |a, b| self.mul(*a, *b))
    }

    /// Exponent `m ≥ 1` with `x^m` idempotent, the least one.
    pub fn omega_exponent(&self, x: usize) -> usize {
        omega_exponent_by(x, |a, b| self.mul(*a, *b))
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.n).all(|a| (0..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_group(&self) -> bool {
        match self.identity() {
            Some(e) => (0..self.n).all(|a| (0..self.n).any(|b| self.mul(a, b) == e)),
            None => false,
        }
    }

    pub fn is_aperiodic(&self) -> bool {
        (0..self.n).all(|x| {
            let e = self.idempotent_power(x);
            self.mul(e, x) == e
        })
    }

    /// Sub-semigroup (or submonoid when `with_identity`) generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize], with_identity: Option<usize>) -> Vec<usize> {
        let mut seen = vec![false; self.n];
        let mut out: Vec<usize> = Vec::new();
        for &g in gens.iter().chain(with_identity.iter()) {
            if !seen[g] {
                seen[g] = true;
                out.push(g);
            }
        }
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    /// Restriction to a subset closed under multiplication, renumbered in the given order.
    pub fn restrict(&self, elems: &[usize]) -> FiniteSemigroup {
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let k = elems.len();
        let table = (0..k * k).map(|i| pos[&self.mul(elems[i / k], elems[i % k])]).collect();
        FiniteSemigroup {
            n: k,
            table,
            names: elems.iter().map(|&e| self.names[e].clone()).collect(),
        }
    }

    pub fn relabel(&self, perm: &[usize]) -> Vec<usize> {
        // perm[old] = new
        let n = self.n;
        let mut t = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                t[perm[a] * n + perm[b]] = perm[self.mul(a, b)];
            }
        }
        t
    }

    /// Lexicographically least relabelled table; equal for isomorphic semigroups.
    pub fn canonical_table(&self) -> Vec<usize> {
        let mut best: Option<Vec<usize>> = None;
        for_each_permutation(self.n, |perm| {
            let t = self.relabel(perm);
            if best.as_ref().is_none_or(|b| t < *b) {
                best = Some(t);
            }
        });
        best.unwrap_or_default()
    }

    pub fn cyclic_group(n: usize) -> Self {
        FiniteSemigroup::from_fn(n, |a, b| (a + b) % n)
    }

    /// Monogenic semigroup `{x, …, x^(index+period-1)}` with `x^(index+period) = x^index`.
    pub fn monogenic(index: usize, period: usize) -> Self {
        let n = index + period - 1;
        let reduce = |k: usize| {
            // k is an exponent >= 1
            if k < index + period {
                k
            } else {
                index + (k - index) % period
            }
        };
        FiniteSemigroup::from_fn(n, |a, b| reduce(a + 1 + b + 1) - 1)
    }

    /// Null semigroup of order n: every product is element 0.
    pub fn null(n: usize) -> Self {
        FiniteSemigroup::from_fn(n, |_, _| 0)
    }

    pub fn left_zero(n: usize) -> Self {
        FiniteSemigroup::from_fn(n, |a, _| a)
    }

    pub fn rectangular_band(rows: usize, cols: usize) -> Self {
        FiniteSemigroup::from_fn(rows * cols, |a, b| (a / cols) * cols + b % cols)
    }

    pub fn direct_product(&self, other: &FiniteSemigroup) -> Self {
        let m = other.n;
        FiniteSemigroup::from_fn(self.n * m, |a, b| self.mul(a / m, b / m) * m + other.mul(a % m, b % m))
    }

    /// Adjoins a new identity as the last element.
    pub fn with_identity(&self) -> Self {
        let n = self.n;
        FiniteSemigroup::from_fn(n + 1, |a, b| match (a == n, b == n) {
            (true, _) => b,
            (_, true) => a,
            _ => self.mul(a, b),
        })
    }

    /// Adjoins a new zero as the last element.
    pub fn with_zero(&self) -> Self {
        let n = self.n;
        FiniteSemigroup::from_fn(n + 1, |a, b| if a == n || b == n { n } else { self.mul(a, b) })
    }

    /// Semigroup generated by transformations of `{0..k}` composed left to right.
    pub fn from_transformations(gens: &[Vec<usize>]) -> Self {
        let mut elems: Vec<Vec<usize>> = Vec::new();
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        for g in gens {
            if !index.contains_key(g) {
                index.insert(g.clone(), elems.len());
                elems.push(g.clone());
            }
        }
        let mut i = 0;
        while i < elems.len() {
            for g in gens {
                let h: Vec<usize> = elems[i].iter().map(|&q| g[q]).collect();
                if !index.contains_key(&h) {
                    index.insert(h.clone(), elems.len());
                    elems.push(h);
                }
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                let h: Vec<usize> = elems[a].iter().map(|&q| elems[b][q]).collect();
                table[a * n + b] = index[&h];
            }
        }
        FiniteSemigroup {
            n,
            table,
            names: (0..n).map(|i| i.to_string()).collect(),
        }
    }
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    f(&perm);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            f(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Least `m ≥ 1` such that `x^m` is idempotent, for any associative `mul`.
pub fn omega_exponent_by<T: Clone + Eq + Hash>(x: T, mul: impl Fn(&T, &T) -> T) -> usize {
    let mut seen: HashMap<T, usize> = HashMap::new();
    let mut cur = x.clone();
    let mut k = 1;
    loop {
        if let Some(&i) = seen.get(&cur) {
            let period = k - i;
            // smallest multiple of period that is >= i
            return i.div_ceil(period) * period;
        }
        seen.insert(cur.clone(), k);
        cur = mul(&cur, &x);
        k += 1;
    }
}

/// The unique idempotent among the powers of `x`.
pub fn idempotent_power_by<T: Clone + Eq + Hash>(x: T, mul: impl Fn(&T, &T) -> T) -> T {
    let m = omega_exponent_by(x.clone(), &mul);
    let mut cur = x.clone();
    for _ in 1..m {
        cur = mul(&cur, &x);
    }
    cur
}

/// All semigroups of order `n` with labelled elements (associative tables).
pub fn labelled_semigroups(n: usize) -> Vec<FiniteSemigroup> {
    let mut table: Vec<Option<usize>> = vec![None; n * n];
    let mut out = Vec::new();
    fill(n, 0, &mut table, &mut out);
    out
}

fn consistent(n: usize, t: &[Option<usize>]) -> bool {
    let get = |a: usize, b: usize| t[a * n + b];
    for a in 0..n {
        for b in 0..n {
            let Some(ab) = get(a, b) else { continue };
            for c in 0..n {
                let (Some(l), Some(bc)) = (get(ab, c), get(b, c)) else {
                    continue;
                };
                if let Some(r) = get(a, bc) {
                    if l != r {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn fill(n: usize, cell: usize, t: &mut Vec<Option<usize>>, out: &mut Vec<FiniteSemigroup>) {
    if cell == n * n {
        let table = t.iter().map(|x| x.unwrap()).collect();
        out.push(FiniteSemigroup::new(n, table).unwrap());
        return;
    }
    for v in 0..n {
        t[cell] = Some(v);
        if consistent(n, t) {
            fill(n, cell + 1, t, out);
        }
    }
    t[cell] = None;
}

/// Semigroups of order `n` up to isomorphism, in order of their canonical tables.
pub fn semigroups_up_to_iso(n: usize) -> Vec<FiniteSemigroup> {
    let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
    let mut out = Vec::new();
    for s in labelled_semigroups(n) {
        let c = s.canonical_table();
        if seen.insert(c.clone(), ()).is_none() {
            out.push(FiniteSemigroup::new(n, c).unwrap());
        }
    }
    out.sort_by(|a, b| a.table.cmp(&b.table));
    out
}

/// Every semigroup of order at most 4 up to isomorphism, plus hand-picked ones of order 5 and 6.
pub fn catalog() -> Vec<(String, FiniteSemigroup)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for (i, s) in semigroups_up_to_iso(n).into_iter().enumerate() {
            out.push((format!("order{n}-{i}"), s));
        }
    }
    out.extend(curated());
    out
}

/// Hand-picked semigroups of order 5 and 6.
pub fn curated() -> Vec<(String, FiniteSemigroup)> {
    let z2 = FiniteSemigroup::cyclic_group(2);
    let z3 = FiniteSemigroup::cyclic_group(3);
    let u1 = FiniteSemigroup::null(1).with_zero(); // {1, 0}: element 0 is the identity here
    let b2 = FiniteSemigroup::from_transformations(&[vec![1, 2, 2], vec![2, 0, 2]]);
    let s3 = FiniteSemigroup::from_transformations(&[vec![1, 0, 2], vec![1, 2, 0]]);
    vec![
        ("z5".into(), FiniteSemigroup::cyclic_group(5)),
        ("z6".into(), FiniteSemigroup::cyclic_group(6)),
        ("s3".into(), s3),
        ("b2".into(), b2.clone()),
        ("b2-monoid".into(), b2.with_identity()),
        ("monogenic-3-3".into(), FiniteSemigroup::monogenic(3, 3)),
        ("nilpotent-5".into(), FiniteSemigroup::monogenic(5, 1)),
        ("null-5".into(), FiniteSemigroup::null(5)),
        ("left-zero-5".into(), FiniteSemigroup::left_zero(5)),
        ("rect-2x3".into(), FiniteSemigroup::rectangular_band(2, 3)),
        ("z3-times-u1".into(), z3.direct_product(&u1)),
        ("z2-layered".into(), z2.with_zero().with_identity().with_zero()),
        ("z5-with-zero".into(), FiniteSemigroup::cyclic_group(5).with_zero()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn counts_of_small_semigroups() {
        assert_eq!(labelled_semigroups(2).len(), 8);
        assert_eq!(labelled_semigroups(3).len(), 113);
        assert_eq!(semigroups_up_to_iso(1).len(), 1);
        assert_eq!(semigroups_up_to_iso(2).len(), 5);
        assert_eq!(semigroups_up_to_iso(3).len(), 24);
    }

    #[test]
    fn order_four() {
        assert_eq!(labelled_semigroups(4).len(), 3492);
        assert_eq!(semigroups_up_to_iso(4).len(), 188);
    }

    #[test]
    fn curated_are_semigroups() {
        for (name, s) in curated() {
            assert!(s.is_associative(), "{name}");
            assert!((5..=6).contains(&s.len()), "{name} has order {}", s.len());
        }
    }

    #[test]
    fn idempotent_power_examples() {
        let z3 = FiniteSemigroup::cyclic_group(3);
        assert_eq!(z3.idempotent_power(1), 0);
        assert_eq!(z3.idempotent_power(0), 0);
        let u = FiniteSemigroup::null(1).with_zero();
        assert_eq!(u.zero(), Some(1));
        assert_eq!(u.idempotent_power(1), 1);
        let m = FiniteSemigroup::monogenic(3, 2);
        let e = m.idempotent_power(0);
        assert!(m.is_idempotent(e));
    }

    #[test]
    fn monogenic_shape() {
        let m = FiniteSemigroup::monogenic(2, 3);
        assert_eq!(m.len(), 4);
        assert!(m.is_associative());
        // x^5 = x^2
        assert_eq!(m.power(0, 5), m.power(0, 2));
    }

    #[test]
    fn group_and_aperiodic_flags() {
        assert!(FiniteSemigroup::cyclic_group(4).is_group());
        assert!(!FiniteSemigroup::null(2).is_group());
        assert!(FiniteSemigroup::left_zero(3).is_aperiodic());
        assert!(!FiniteSemigroup::cyclic_group(2).is_aperiodic());
    }

    fn arb_semigroup() -> impl Strategy<Value = FiniteSemigroup> {
        proptest::collection::vec(proptest::collection::vec(0usize..3, 3), 1..3)
            .prop_map(|gens| FiniteSemigroup::from_transformations(&gens))
    }

    proptest! {
        #[test]
        fn idempotent_power_is_an_idempotent_power(s in arb_semigroup(), x in 0usize..27) {
            let x = x % s.len();
            let e = s.idempotent_power(x);
            prop_assert!(s.is_idempotent(e));
            let m = s.omega_exponent(x);
            prop_assert_eq!(s.power(x, m), e);
            prop_assert!((1..=s.len()).any(|k| s.power(x, k) == e));
        }

        #[test]
        fn transformation_semigroups_are_associative(s in arb_semigroup()) {
            prop_assert!(s.is_associative());
        }
    }
}
