//! Paired alphabet, well-formed words, the five word types and dependent sets.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Type of a single paired letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LetterType {
    Ll,
    Lb,
    Bl,
}

impl LetterType {
    pub fn tag(self) -> Tag {
        match self {
            LetterType::Ll => Tag::Ll,
            LetterType::Lb => Tag::Lb,
            LetterType::Bl => Tag::Bl,
        }
    }
}

/// One of the five types of non-empty well-formed words.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tag {
    #[serde(rename = "ll")]
    Ll,
    #[serde(rename = "lb")]
    Lb,
    #[serde(rename = "bl")]
    Bl,
    #[serde(rename = "ll->lb")]
    LlLb,
    #[serde(rename = "ll->bl")]
    LlBl,
}

impl Tag {
    pub const ALL: [Tag; 5] = [Tag::Ll, Tag::Lb, Tag::Bl, Tag::LlLb, Tag::LlBl];
    pub const SELF_COMPATIBLE: [Tag; 3] = [Tag::Ll, Tag::Lb, Tag::Bl];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn first(self) -> LetterType {
        match self {
            Tag::Ll | Tag::LlLb | Tag::LlBl => LetterType::Ll,
            Tag::Lb => LetterType::Lb,
            Tag::Bl => LetterType::Bl,
        }
    }

    pub fn last(self) -> LetterType {
        match self {
            Tag::Ll => LetterType::Ll,
            Tag::Lb | Tag::LlLb => LetterType::Lb,
            Tag::Bl | Tag::LlBl => LetterType::Bl,
        }
    }

    /// The type with the given first and last letter-types, if any.
    pub fn from_ends(first: LetterType, last: LetterType) -> Option<Tag> {
        use LetterType::*;
        match (first, last) {
            (Ll, Ll) => Some(Tag::Ll),
            (Ll, Lb) => Some(Tag::LlLb),
            (Ll, Bl) => Some(Tag::LlBl),
            (Lb, Lb) => Some(Tag::Lb),
            (Bl, Bl) => Some(Tag::Bl),
            _ => None,
        }
    }

    pub fn is_self_compatible(self) -> bool {
        self.concat(self).is_some()
    }

    /// Partial concatenation of types; `None` when incompatible.
    pub fn concat(self, other: Tag) -> Option<Tag> {
        let (end, start) = (self.last(), other.first());
        if end == start || end == LetterType::Ll {
            Tag::from_ends(self.first(), other.last())
        } else {
            None
        }
    }

    pub fn compatible(self, other: Tag) -> bool {
        self.concat(other).is_some()
    }

    pub fn name(self) -> &'static str {
        match self {
            Tag::Ll => "ll",
            Tag::Lb => "lb",
            Tag::Bl => "bl",
            Tag::LlLb => "ll->lb",
            Tag::LlBl => "ll->bl",
        }
    }

    /// Whether a non-empty word of forced type `forced` may also be read with this type
    /// in the unital free algebra.
    pub fn admits(self, forced: Tag) -> bool {
        self == forced
            || matches!(
                (forced, self),
                (Tag::Ll, Tag::LlLb) | (Tag::Ll, Tag::LlBl) | (Tag::Lb, Tag::LlLb) | (Tag::Bl, Tag::LlBl)
            )
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Tag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tag> {
        Tag::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::parse(1, 1, format!("unknown type `{s}`")))
    }
}

/// A letter of the paired alphabet; `None` is the pad.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PairedLetter {
    pub left: Option<char>,
    pub right: Option<char>,
}

impl PairedLetter {
    pub fn new(left: Option<char>, right: Option<char>) -> Result<Self> {
        if left.is_none() && right.is_none() {
            return Err(Error::UnknownLetter("(_,_)".into()));
        }
        Ok(PairedLetter { left, right })
    }

    pub fn letter_type(self) -> LetterType {
        match (self.left, self.right) {
            (Some(_), Some(_)) => LetterType::Ll,
            (Some(_), None) => LetterType::Lb,
            _ => LetterType::Bl,
        }
    }
}

impl fmt::Display for PairedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = |x: Option<char>| x.unwrap_or('_');
        write!(f, "({},{})", c(self.left), c(self.right))
    }
}

pub fn letter_type(l: PairedLetter) -> LetterType {
    l.letter_type()
}

pub fn concat_types(s: Tag, t: Tag) -> Option<Tag> {
    s.concat(t)
}

fn valid_symbol(c: char) -> bool {
    c.is_ascii_graphic() && !matches!(c, '_' | '(' | ')' | ',' | '#' | ':' | '=')
}

/// Base alphabet Σ, kept sorted. Paired letters are indexed in canonical order:
/// left component first, then right, pad last.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<char>,
}

impl Alphabet {
    pub fn new(symbols: impl IntoIterator<Item = char>) -> Result<Self> {
        let mut symbols: Vec<char> = symbols.into_iter().collect();
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        if let Some(c) = symbols.iter().find(|c| !valid_symbol(**c)) {
            return Err(Error::InvalidAlphabet(format!("symbol `{c}` is not allowed")));
        }
        Ok(Alphabet { symbols })
    }

    /// Shorthand for alphabets given as a string of symbols, e.g. `"ab"`.
    pub fn from_str_symbols(s: &str) -> Result<Self> {
        Alphabet::new(s.chars())
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn contains(&self, c: char) -> bool {
        self.symbols.binary_search(&c).is_ok()
    }

    fn sym_index(&self, s: Option<char>) -> Option<usize> {
        match s {
            None => Some(self.symbols.len()),
            Some(c) => self.symbols.binary_search(&c).ok(),
        }
    }

    /// Number of letters of Σ□.
    pub fn num_letters(&self) -> usize {
        let k = self.symbols.len() + 1;
        k * k - 1
    }

    pub fn letter(&self, idx: usize) -> PairedLetter {
        let k = self.symbols.len() + 1;
        let sym = |i: usize| self.symbols.get(i).copied();
        PairedLetter {
            left: sym(idx / k),
            right: sym(idx % k),
        }
    }

    pub fn index_of(&self, l: PairedLetter) -> Option<usize> {
        let k = self.symbols.len() + 1;
        let (li, ri) = (self.sym_index(l.left)?, self.sym_index(l.right)?);
        let idx = li * k + ri;
        (idx < self.num_letters()).then_some(idx)
    }

    pub fn letters(&self) -> impl Iterator<Item = PairedLetter> + '_ {
        (0..self.num_letters()).map(|i| self.letter(i))
    }

    pub fn letter_type_of(&self, idx: usize) -> LetterType {
        self.letter(idx).letter_type()
    }

    /// Indices of the letters of a given letter-type, in canonical order.
    pub fn letters_of_type(&self, t: LetterType) -> Vec<usize> {
        (0..self.num_letters())
            .filter(|&i| self.letter_type_of(i) == t)
            .collect()
    }

    pub fn check_word(&self, w: &str) -> Result<()> {
        match w.chars().find(|c| !self.contains(*c)) {
            Some(c) => Err(Error::UnknownLetter(c.to_string())),
            None => Ok(()),
        }
    }

    /// All words over Σ of length exactly `n`, in lexicographic order.
    pub fn words_of_len(&self, n: usize) -> Vec<String> {
        let mut out = vec![String::new()];
        for _ in 0..n {
            out = out
                .iter()
                .flat_map(|w| self.symbols.iter().map(move |c| format!("{w}{c}")))
                .collect();
        }
        out
    }

    /// All words of length at most `n`, shortlex order.
    pub fn words_up_to(&self, n: usize) -> Vec<String> {
        (0..=n).flat_map(|k| self.words_of_len(k)).collect()
    }

    pub fn encode_indices(&self, w: &PairedWord) -> Result<Vec<usize>> {
        w.letters
            .iter()
            .map(|l| self.index_of(*l).ok_or_else(|| Error::UnknownLetter(l.to_string())))
            .collect()
    }

    pub fn decode_indices(&self, idx: &[usize]) -> PairedWord {
        PairedWord {
            letters: idx.iter().map(|&i| self.letter(i)).collect(),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.symbols.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// A word over Σ□, not necessarily well-formed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PairedWord {
    pub letters: Vec<PairedLetter>,
}

impl PairedWord {
    pub fn new(letters: Vec<PairedLetter>) -> Self {
        PairedWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Parses `(a,b)(a,_)`; `eps` or the empty string denote the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.is_empty() || t == "eps" || t == "1" {
            return Ok(PairedWord::default());
        }
        let chars: Vec<char> = t.chars().collect();
        let mut letters = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if chars[i].is_whitespace() {
                i += 1;
                continue;
            }
            let (letter, next) = parse_pair(&chars, i)?;
            letters.push(letter);
            i = next;
        }
        Ok(PairedWord { letters })
    }
}

/// Parses one `(x,y)` starting at `i`; returns the letter and the index after it.
pub(crate) fn parse_pair(chars: &[char], i: usize) -> Result<(PairedLetter, usize)> {
    let col = i + 1;
    let get = |k: usize| chars.get(k).copied();
    if get(i) != Some('(') || get(i + 2) != Some(',') || get(i + 4) != Some(')') {
        return Err(Error::parse(1, col, "expected a pair `(x,y)`"));
    }
    let sym = |c: char| -> Result<Option<char>> {
        if c == '_' {
            Ok(None)
        } else if valid_symbol(c) {
            Ok(Some(c))
        } else {
            Err(Error::parse(1, col, format!("bad symbol `{c}`")))
        }
    };
    let (l, r) = (sym(chars[i + 1])?, sym(chars[i + 3])?);
    let letter = PairedLetter::new(l, r).map_err(|_| Error::parse(1, col, "(_,_) is not a letter"))?;
    Ok((letter, i + 5))
}

impl fmt::Display for PairedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("eps");
        }
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Result of [`classify_word`]. A well-formed empty word has `tag: None` (any unit type).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    WellFormed { tag: Option<Tag>, pair: (String, String) },
    NotWellFormed,
}

/// Letter-type sequence check shared by [`classify_word`] and index-level callers.
pub fn forced_tag<I: IntoIterator<Item = LetterType>>(types: I) -> Option<Option<Tag>> {
    let mut first = None;
    let mut last = None;
    for t in types {
        match (last, t) {
            (None, _) | (Some(LetterType::Ll), _) => {}
            (Some(a), b) if a == b => {}
            _ => return None,
        }
        if first.is_none() {
            first = Some(t);
        }
        last = Some(t);
    }
    match (first, last) {
        (Some(f), Some(l)) => Some(Tag::from_ends(f, l)),
        _ => Some(None),
    }
}

pub fn classify_word(w: &PairedWord) -> Classification {
    match forced_tag(w.letters.iter().map(|l| l.letter_type())) {
        None => Classification::NotWellFormed,
        Some(tag) => {
            let left = w.letters.iter().filter_map(|l| l.left).collect();
            let right = w.letters.iter().filter_map(|l| l.right).collect();
            Classification::WellFormed {
                tag,
                pair: (left, right),
            }
        }
    }
}

pub fn is_well_formed(w: &PairedWord) -> bool {
    classify_word(w) != Classification::NotWellFormed
}

/// Positionwise encoding of a pair of words, padded with `_`.
pub fn encode_word(u: &str, v: &str) -> PairedWord {
    let (u, v): (Vec<char>, Vec<char>) = (u.chars().collect(), v.chars().collect());
    let n = u.len().max(v.len());
    let letters = (0..n)
        .map(|i| PairedLetter {
            left: u.get(i).copied(),
            right: v.get(i).copied(),
        })
        .collect();
    PairedWord { letters }
}

/// A well-formed word together with a type it may carry in the unital free algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypedWord {
    pub word: PairedWord,
    pub tag: Tag,
}

impl TypedWord {
    pub fn new(word: PairedWord, tag: Tag) -> Result<Self> {
        let ok = match classify_word(&word) {
            Classification::NotWellFormed => false,
            Classification::WellFormed { tag: None, .. } => true,
            Classification::WellFormed { tag: Some(f), .. } => tag.admits(f),
        };
        if ok {
            Ok(TypedWord { word, tag })
        } else {
            Err(Error::BadTypedWord {
                word: word.to_string(),
                tag: tag.to_string(),
            })
        }
    }

    /// A non-empty word typed by its forced type.
    pub fn forced(word: PairedWord) -> Result<Self> {
        match classify_word(&word) {
            Classification::WellFormed { tag: Some(t), .. } => Ok(TypedWord { word, tag: t }),
            _ => Err(Error::BadTypedWord {
                word: word.to_string(),
                tag: "forced".into(),
            }),
        }
    }

    /// Whether this typed word lives in the positive free algebra.
    pub fn is_positive(&self) -> bool {
        match classify_word(&self.word) {
            Classification::WellFormed { tag: Some(t), .. } => t == self.tag,
            _ => false,
        }
    }
}

impl fmt::Display for TypedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.word, self.tag)
    }
}

/// Encodes `(u, v)`; the pair `(ε, ε)` is displayed with type `ll`.
pub fn encode_pair(u: &str, v: &str) -> TypedWord {
    let word = encode_word(u, v);
    let tag = match classify_word(&word) {
        Classification::WellFormed { tag: Some(t), .. } => t,
        _ => Tag::Ll,
    };
    TypedWord { word, tag }
}

/// Elements spread over the five types with a dependency relation.
/// Elements are numbered globally, grouped by type in [`Tag::ALL`] order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DependentSet {
    offsets: [usize; 6],
    dep: Vec<bool>,
}

impl DependentSet {
    /// Discrete dependency relation (equality only).
    pub fn discrete(sizes: [usize; 5]) -> Self {
        let mut offsets = [0; 6];
        for i in 0..5 {
            offsets[i + 1] = offsets[i] + sizes[i];
        }
        let n = offsets[5];
        let mut dep = vec![false; n * n];
        for i in 0..n {
            dep[i * n + i] = true;
        }
        DependentSet { offsets, dep }
    }

    pub fn len(&self) -> usize {
        self.offsets[5]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn size(&self, t: Tag) -> usize {
        self.offsets[t.index() + 1] - self.offsets[t.index()]
    }

    pub fn sizes(&self) -> [usize; 5] {
        Tag::ALL.map(|t| self.size(t))
    }

    pub fn ids(&self, t: Tag) -> std::ops::Range<usize> {
        self.offsets[t.index()]..self.offsets[t.index() + 1]
    }

    pub fn id(&self, t: Tag, local: usize) -> usize {
        self.offsets[t.index()] + local
    }

    pub fn local(&self, id: usize) -> usize {
        id - self.offsets[self.tag_of(id).index()]
    }

    pub fn tag_of(&self, id: usize) -> Tag {
        Tag::ALL
            .into_iter()
            .find(|t| self.ids(*t).contains(&id))
            .expect("element id out of range")
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.dep[a * self.len() + b]
    }

    pub fn set_related(&mut self, a: usize, b: usize, value: bool) {
        let n = self.len();
        self.dep[a * n + b] = value;
    }

    /// Sets both directions.
    pub fn relate(&mut self, a: usize, b: usize) {
        self.set_related(a, b, true);
        self.set_related(b, a, true);
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.len()).all(|i| self.related(i, i))
    }

    pub fn symmetry_violation(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.related(a, b) && !self.related(b, a))
    }

    /// A pair of distinct same-type dependent elements, if any.
    pub fn same_tag_violation(&self) -> Option<(usize, usize)> {
        Tag::ALL.into_iter().find_map(|t| {
            let r = self.ids(t);
            r.clone()
                .flat_map(|a| r.clone().map(move |b| (a, b)))
                .find(|&(a, b)| a != b && self.related(a, b))
        })
    }

    /// Equivalence classes of the transitive closure of dep, as a class index per element.
    pub fn components(&self) -> Vec<usize> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut queue = VecDeque::from([s]);
            comp[s] = next;
            while let Some(a) = queue.pop_front() {
                for b in 0..n {
                    if comp[b] == usize::MAX && (self.related(a, b) || self.related(b, a)) {
                        comp[b] = next;
                        queue.push_back(b);
                    }
                }
            }
            next += 1;
        }
        comp
    }
}

/// A subset of a dependent set, saturated under dependency.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedSubset {
    members: Vec<bool>,
}

impl ClosedSubset {
    pub fn empty(n: usize) -> Self {
        ClosedSubset {
            members: vec![false; n],
        }
    }

    /// Wraps a membership vector without saturating it. Callers check closedness.
    pub fn from_raw(members: Vec<bool>) -> Self {
        ClosedSubset { members }
    }

    pub fn contains(&self, id: usize) -> bool {
        self.members[id]
    }

    pub fn members(&self) -> &[bool] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().enumerate().filter_map(|(i, m)| m.then_some(i))
    }

    pub fn count(&self) -> usize {
        self.members.iter().filter(|m| **m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    /// A dependent pair split by the subset, if any.
    pub fn closure_violation(&self, d: &DependentSet) -> Option<(usize, usize)> {
        let n = d.len();
        (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| d.related(a, b) && self.members[a] != self.members[b])
    }

    pub fn is_closed(&self, d: &DependentSet) -> bool {
        self.closure_violation(d).is_none()
    }
}

/// Smallest closed superset of `s`.
pub fn close_subset(d: &DependentSet, s: &[usize]) -> ClosedSubset {
    let n = d.len();
    let mut members = vec![false; n];
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &x in s {
        if !members[x] {
            members[x] = true;
            queue.push_back(x);
        }
    }
    while let Some(a) = queue.pop_front() {
        for b in 0..n {
            if !members[b] && (d.related(a, b) || d.related(b, a)) {
                members[b] = true;
                queue.push_back(b);
            }
        }
    }
    ClosedSubset { members }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pl(s: &str) -> PairedLetter {
        PairedWord::parse(s).unwrap().letters[0]
    }

    #[test]
    fn letter_types() {
        assert_eq!(letter_type(pl("(a,b)")), LetterType::Ll);
        assert_eq!(letter_type(pl("(a,_)")), LetterType::Lb);
        assert_eq!(letter_type(pl("(_,a)")), LetterType::Bl);
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat_types(Tag::Ll, Tag::Lb), Some(Tag::LlLb));
        assert_eq!(concat_types(Tag::Lb, Tag::Ll), None);
        assert_eq!(concat_types(Tag::LlLb, Tag::Lb), Some(Tag::LlLb));
    }

    #[test]
    fn concat_is_associative() {
        for a in Tag::ALL {
            for b in Tag::ALL {
                for c in Tag::ALL {
                    let l = a.concat(b).and_then(|ab| ab.concat(c));
                    let r = b.concat(c).and_then(|bc| a.concat(bc));
                    assert_eq!(l, r, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn compatible_pairs_follow_the_rule() {
        let mut count = 0;
        for s in Tag::ALL {
            for t in Tag::ALL {
                let rule = s.last() == t.first() || s.last() == LetterType::Ll;
                assert_eq!(s.compatible(t), rule);
                count += usize::from(rule);
            }
        }
        // ll is followed by anything; the other four only by their own ending type.
        assert_eq!(count, 9);
        let selfc: Vec<Tag> = Tag::ALL.into_iter().filter(|t| t.is_self_compatible()).collect();
        assert_eq!(selfc, Tag::SELF_COMPATIBLE.to_vec());
    }

    #[test]
    fn letters_in_canonical_order() {
        let a = Alphabet::from_str_symbols("ba").unwrap();
        let shown: Vec<String> = a.letters().map(|l| l.to_string()).collect();
        assert_eq!(
            shown,
            ["(a,a)", "(a,b)", "(a,_)", "(b,a)", "(b,b)", "(b,_)", "(_,a)", "(_,b)"]
        );
        for (i, l) in a.letters().enumerate() {
            assert_eq!(a.index_of(l), Some(i));
        }
        assert!(Alphabet::from_str_symbols("a_").is_err());
        assert_eq!(Alphabet::from_str_symbols(""), Err(Error::EmptyAlphabet));
    }

    #[test]
    fn encode_examples() {
        let w = encode_pair("aab", "b");
        assert_eq!(w.to_string(), "(a,b)(a,_)(b,_):ll->lb");
        assert_eq!(encode_pair("", "ab").to_string(), "(_,a)(_,b):bl");
        assert_eq!(encode_pair("ab", "ab").to_string(), "(a,a)(b,b):ll");
        assert_eq!(encode_pair("", "").tag, Tag::Ll);
    }

    #[test]
    fn classify_examples() {
        let w = PairedWord::parse("(a,b)(a,_)(b,_)").unwrap();
        assert_eq!(
            classify_word(&w),
            Classification::WellFormed {
                tag: Some(Tag::LlLb),
                pair: ("aab".into(), "b".into())
            }
        );
        let bad = PairedWord::parse("(a,_)(a,b)").unwrap();
        assert_eq!(classify_word(&bad), Classification::NotWellFormed);
        assert_eq!(
            classify_word(&PairedWord::default()),
            Classification::WellFormed {
                tag: None,
                pair: (String::new(), String::new())
            }
        );
    }

    #[test]
    fn round_trip_exhaustive() {
        let a = Alphabet::from_str_symbols("ab").unwrap();
        let words = a.words_up_to(6);
        for u in &words {
            for v in &words {
                let w = encode_pair(u, v);
                match classify_word(&w.word) {
                    Classification::WellFormed { pair, .. } => {
                        assert_eq!(pair, (u.clone(), v.clone()))
                    }
                    Classification::NotWellFormed => panic!("{u} {v}"),
                }
            }
        }
    }

    #[test]
    fn parse_rejects_pad_pair() {
        assert!(PairedWord::parse("(_,_)").is_err());
        assert!(PairedWord::parse("(a,b").is_err());
        assert_eq!(PairedWord::parse(" (a,b) (b,_) ").unwrap().len(), 2);
    }

    #[test]
    fn typed_word_validity() {
        let ll = PairedWord::parse("(a,b)").unwrap();
        assert!(TypedWord::new(ll.clone(), Tag::LlLb).is_ok());
        assert!(TypedWord::new(ll.clone(), Tag::Lb).is_err());
        assert!(TypedWord::new(PairedWord::default(), Tag::Bl).is_ok());
        assert!(!TypedWord::new(ll, Tag::LlBl).unwrap().is_positive());
    }

    fn unit_set() -> DependentSet {
        let mut d = DependentSet::discrete([1; 5]);
        for a in 0..5 {
            for b in 0..5 {
                if Tag::ALL[a].compatible(Tag::ALL[b]) {
                    d.relate(a, b);
                }
            }
        }
        d
    }

    #[test]
    fn closure_of_units() {
        let d = unit_set();
        assert!(close_subset(&d, &[]).is_empty());
        assert_eq!(close_subset(&d, &[0]).count(), 5);
        let c = close_subset(&d, &[0]);
        let again = close_subset(&d, &c.iter().collect::<Vec<_>>());
        assert_eq!(c, again);
    }

    proptest! {
        #[test]
        fn closure_is_extensive_monotone_idempotent(
            edges in proptest::collection::vec((0usize..10, 0usize..10), 0..12),
            s in proptest::collection::vec(0usize..10, 0..5),
            extra in proptest::collection::vec(0usize..10, 0..5),
        ) {
            let mut d = DependentSet::discrete([2; 5]);
            for (a, b) in edges {
                if d.tag_of(a) != d.tag_of(b) {
                    d.relate(a, b);
                }
            }
            let c = close_subset(&d, &s);
            for x in &s {
                prop_assert!(c.contains(*x));
            }
            prop_assert!(c.is_closed(&d));
            let mut bigger = s.clone();
            bigger.extend(extra);
            let cb = close_subset(&d, &bigger);
            prop_assert!(c.iter().all(|x| cb.contains(x)));
            prop_assert_eq!(close_subset(&d, &c.iter().collect::<Vec<_>>()), c);
        }
    }
}
