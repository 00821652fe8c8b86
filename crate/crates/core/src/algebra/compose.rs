//! Composition of positive algebras and of their recognizers.

use std::collections::{BTreeSet, HashMap};

use super::{AlgebraMorphism, SyncAlgebra, Variant};
use crate::error::{Error, Result};
use crate::words::{ClosedSubset, DependentSet, LetterType, PairedLetter, Tag};

pub const DEFAULT_COMPOSE_GUARD: usize = 4096;

fn letter_type(top: bool, bottom: bool) -> Option<LetterType> {
    // true = letter, false = pad
    match (top, bottom) {
        (true, true) => Some(LetterType::Ll),
        (true, false) => Some(LetterType::Lb),
        (false, true) => Some(LetterType::Bl),
        (false, false) => None,
    }
}

fn ends(t: LetterType) -> (bool, bool) {
    match t {
        LetterType::Ll => (true, true),
        LetterType::Lb => (true, false),
        LetterType::Bl => (false, true),
    }
}

/// Type pairs `(ρ, σ)` whose elements of `A_ρ × B_σ` make up the carrier of type `τ`.
pub fn middle_types(t: Tag) -> Vec<(Tag, Tag)> {
    let (a, b) = ends(t.first());
    let (c, d) = ends(t.last());
    let mut out = Vec::new();
    for e in [true, false] {
        for f in [true, false] {
            let rho = letter_type(a, e)
                .zip(letter_type(c, f))
                .and_then(|(x, y)| Tag::from_ends(x, y));
            let sigma = letter_type(e, b)
                .zip(letter_type(f, d))
                .and_then(|(x, y)| Tag::from_ends(x, y));
            if let (Some(r), Some(s)) = (rho, sigma) {
                out.push((r, s));
            }
        }
    }
    out
}

fn check_positive(a: &SyncAlgebra, b: &SyncAlgebra) -> Result<()> {
    if a.variant() != Variant::Positive || b.variant() != Variant::Positive {
        return Err(Error::VariantMismatch("composition needs positive algebras".into()));
    }
    Ok(())
}

fn set_name(t: Tag, pairs: &[(String, String)]) -> String {
    let inner: Vec<String> = pairs.iter().map(|(x, y)| format!("<{x},{y}>")).collect();
    format!("{t}:{{{}}}", inner.join(";"))
}

/// The full powerset algebra `A ⋄ B`; refused when its carrier exceeds `guard` elements.
pub fn compose_algebras(a: &SyncAlgebra, b: &SyncAlgebra, guard: usize) -> Result<SyncAlgebra> {
    check_positive(a, b)?;
    let pairs: Vec<Vec<(usize, usize)>> = Tag::ALL
        .iter()
        .map(|&t| {
            middle_types(t)
                .into_iter()
                .flat_map(|(r, s)| a.ids(r).flat_map(move |x| b.ids(s).map(move |y| (x, y))))
                .collect()
        })
        .collect();
    let mut total: usize = 0;
    for p in &pairs {
        let size = if p.len() >= 40 { usize::MAX } else { 1usize << p.len() };
        total = total.saturating_add(size);
    }
    if total > guard {
        return Err(Error::SizeGuardExceeded {
            what: "composition carrier",
            size: total,
            guard,
        });
    }
    let sizes = Tag::ALL.map(|t| 1usize << pairs[t.index()].len());
    let set = DependentSet::discrete(sizes);
    let n = set.len();
    let decode = |id: usize| -> (Tag, Vec<(usize, usize)>) {
        let t = set.tag_of(id);
        let mask = set.local(id);
        let members = pairs[t.index()]
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        (t, members)
    };
    let names = (0..n)
        .map(|id| {
            let (t, members) = decode(id);
            let shown: Vec<(String, String)> = members
                .iter()
                .map(|&(x, y)| (a.name(x).to_string(), b.name(y).to_string()))
                .collect();
            set_name(t, &shown)
        })
        .collect();
    let mut stray = None;
    let alg = SyncAlgebra::from_fn(Variant::Positive, set.clone(), names, None, |i, j| {
        let (ti, xs) = decode(i);
        let (tj, ys) = decode(j);
        let t = ti.concat(tj).expect("compatible");
        let mut mask = 0usize;
        for &(x, y) in &xs {
            for &(x2, y2) in &ys {
                if let (Some(p), Some(q)) = (a.mul(x, x2), b.mul(y, y2)) {
                    match pairs[t.index()].iter().position(|&pr| pr == (p, q)) {
                        Some(k) => mask |= 1 << k,
                        None => stray = Some((p, q)),
                    }
                }
            }
        }
        set.id(t, mask)
    })?;
    if let Some((p, q)) = stray {
        return Err(Error::InvalidAlgebra(format!(
            "product pair <{},{}> falls outside the carrier",
            a.name(p),
            b.name(q)
        )));
    }
    Ok(alg)
}

/// State of one track: not started and never will be, running with a value, or finished.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Track {
    Idle,
    Run(usize),
    Done(usize),
}

fn track_mul(alg: &SyncAlgebra, x: Track, y: Track) -> Option<Track> {
    use Track::*;
    match (x, y) {
        (Run(a), Run(b)) => alg.mul(a, b).map(Run),
        (Run(a), Done(b)) => alg.mul(a, b).map(Done),
        (Run(a), Idle) | (Done(a), Idle) => Some(Done(a)),
        (Idle, Idle) => Some(Idle),
        _ => None,
    }
}

fn track_value(x: Track) -> Option<usize> {
    match x {
        Track::Idle => None,
        Track::Run(a) | Track::Done(a) => Some(a),
    }
}

type Element = (Tag, BTreeSet<(Track, Track)>);

/// Recognizer of `R ∘ S` from recognizers of `R` and `S`, following the powerset
/// definition literally: one middle letter per position, no track may idle.
pub fn compose_recognizers(phi: &AlgebraMorphism, psi: &AlgebraMorphism, guard: usize) -> Result<AlgebraMorphism> {
    build(phi, psi, guard, false)
}

/// Exact variant: tracks may end before the others, and the middle word may outlast both
/// outer words.
pub fn compose_recognizers_exact(
    phi: &AlgebraMorphism,
    psi: &AlgebraMorphism,
    guard: usize,
) -> Result<AlgebraMorphism> {
    build(phi, psi, guard, true)
}

/// Kept for callers that want both recognizers at once.
#[derive(Clone, Debug)]
pub struct ComposedRecognizer {
    pub literal: AlgebraMorphism,
    pub exact: AlgebraMorphism,
}

impl ComposedRecognizer {
    pub fn new(phi: &AlgebraMorphism, psi: &AlgebraMorphism, guard: usize) -> Result<Self> {
        Ok(ComposedRecognizer {
            literal: compose_recognizers(phi, psi, guard)?,
            exact: compose_recognizers_exact(phi, psi, guard)?,
        })
    }
}

fn build(phi: &AlgebraMorphism, psi: &AlgebraMorphism, guard: usize, exact: bool) -> Result<AlgebraMorphism> {
    let (a, b) = (phi.target(), psi.target());
    check_positive(a, b)?;
    if phi.alphabet() != psi.alphabet() {
        return Err(Error::AlphabetMismatch(
            phi.alphabet().to_string(),
            psi.alphabet().to_string(),
        ));
    }
    let (acc_a, acc_b) = match (phi.accepting(), psi.accepting()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::InvalidAlgebra("both recognizers need accepting sets".into())),
    };
    let al = phi.alphabet();
    let middles: Vec<Option<char>> = al.symbols().iter().map(|&c| Some(c)).chain([None]).collect();
    let track = |m: &AlgebraMorphism, l: Option<char>, r: Option<char>| -> Option<Track> {
        match PairedLetter::new(l, r) {
            Ok(pl) => Some(Track::Run(m.images()[al.index_of(pl).expect("letter")])),
            Err(_) => exact.then_some(Track::Idle),
        }
    };

    let mut elems: Vec<Element> = Vec::new();
    let mut index: HashMap<Element, usize> = HashMap::new();
    let mut images = Vec::with_capacity(al.num_letters());
    for l in 0..al.num_letters() {
        let pl = al.letter(l);
        let mut set = BTreeSet::new();
        for &y in &middles {
            if let (Some(r), Some(s)) = (track(phi, pl.left, y), track(psi, y, pl.right)) {
                set.insert((r, s));
            }
        }
        let e = (pl.letter_type().tag(), set);
        let id = *index.entry(e.clone()).or_insert_with(|| {
            elems.push(e);
            elems.len() - 1
        });
        images.push(id);
    }
    // closure under products
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    let mut done = 0;
    while done < elems.len() {
        let i = done;
        done += 1;
        let mut j = 0;
        while j < done {
            for (x, y) in [(i, j), (j, i)] {
                if table.contains_key(&(x, y)) {
                    continue;
                }
                let (tx, ty) = (elems[x].0, elems[y].0);
                let Some(t) = tx.concat(ty) else { continue };
                let mut set = BTreeSet::new();
                for &(r, s) in &elems[x].1 {
                    for &(r2, s2) in &elems[y].1 {
                        if let (Some(p), Some(q)) = (track_mul(a, r, r2), track_mul(b, s, s2)) {
                            set.insert((p, q));
                        }
                    }
                }
                let e = (t, set);
                let id = match index.get(&e) {
                    Some(&id) => id,
                    None => {
                        if elems.len() >= guard {
                            return Err(Error::SizeGuardExceeded {
                                what: "composed recognizer",
                                size: elems.len() + 1,
                                guard,
                            });
                        }
                        elems.push(e.clone());
                        index.insert(e, elems.len() - 1);
                        elems.len() - 1
                    }
                };
                table.insert((x, y), id);
            }
            j += 1;
        }
    }

    // middle suffixes beyond both outer words
    let mut tails: BTreeSet<(usize, usize)> = BTreeSet::new();
    if exact {
        let steps: Vec<(usize, usize)> = al
            .symbols()
            .iter()
            .map(|&c| {
                let r = phi.images()[al
                    .index_of(PairedLetter {
                        left: None,
                        right: Some(c),
                    })
                    .expect("letter")];
                let s = psi.images()[al
                    .index_of(PairedLetter {
                        left: Some(c),
                        right: None,
                    })
                    .expect("letter")];
                (r, s)
            })
            .collect();
        let mut frontier: Vec<(usize, usize)> = steps.clone();
        while let Some((r, s)) = frontier.pop() {
            if tails.insert((r, s)) {
                for &(r2, s2) in &steps {
                    let next = (a.mul(r, r2).expect("bl"), b.mul(s, s2).expect("lb"));
                    if !tails.contains(&next) {
                        frontier.push(next);
                    }
                }
            }
        }
    }
    let accepts = |set: &BTreeSet<(Track, Track)>| {
        set.iter().any(|&(r, s)| {
            let direct =
                track_value(r).is_some_and(|x| acc_a.contains(x)) && track_value(s).is_some_and(|y| acc_b.contains(y));
            let tailed = match (r, s) {
                (Track::Run(x), Track::Run(y)) => tails.iter().any(|&(t1, t2)| {
                    a.mul(x, t1).is_some_and(|p| acc_a.contains(p)) && b.mul(y, t2).is_some_and(|q| acc_b.contains(q))
                }),
                _ => false,
            };
            direct || tailed
        })
    };

    // renumber grouped by type
    let mut order: Vec<usize> = (0..elems.len()).collect();
    order.sort_by_key(|&i| (elems[i].0, i));
    let mut pos = vec![0; elems.len()];
    for (k, &i) in order.iter().enumerate() {
        pos[i] = k;
    }
    let sizes = Tag::ALL.map(|t| elems.iter().filter(|e| e.0 == t).count());
    let set = DependentSet::discrete(sizes);
    let names = order
        .iter()
        .enumerate()
        .map(|(k, &i)| format!("{}:c{k}", elems[i].0))
        .collect();
    let alg = SyncAlgebra::from_fn(Variant::Positive, set, names, None, |x, y| {
        pos[table[&(order[x], order[y])]]
    })?;
    let accepting = ClosedSubset::from_raw(order.iter().map(|&i| accepts(&elems[i].1)).collect());
    let images = images.into_iter().map(|i| pos[i]).collect();
    AlgebraMorphism::new(al.clone(), alg, images, Some(accepting))?.rename_by_preimages()
}
