//! Line-based text format for algebras.

use std::collections::HashMap;
use std::fmt::Write;

use super::{SyncAlgebra, Variant, UNDEFINED};
use crate::error::{Error, Result};
use crate::words::{DependentSet, Tag};

impl SyncAlgebra {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "variant: {}", self.variant).unwrap();
        for t in Tag::ALL {
            let names: Vec<&str> = self.ids(t).map(|i| self.name(i)).collect();
            writeln!(s, "elements {t}: {}", names.join(" ")).unwrap();
        }
        if let Some(units) = self.units {
            for t in Tag::ALL {
                writeln!(s, "unit {t}: {}", self.name(units[t.index()])).unwrap();
            }
        }
        let n = self.len();
        for a in 0..n {
            for b in 0..n {
                if let Some(c) = self.mul(a, b) {
                    writeln!(s, "prod: {} {} = {}", self.name(a), self.name(b), self.name(c)).unwrap();
                }
            }
        }
        for (a, b) in self.dep_pairs() {
            writeln!(s, "dep: {} {}", self.name(a), self.name(b)).unwrap();
        }
        s
    }
}

/// Parses the text format. `dep` lines are read symmetrically; with `validate` the axioms
/// are checked and the first violation is reported.
pub fn parse_algebra(text: &str, validate: bool) -> Result<SyncAlgebra> {
    let mut variant = None;
    let mut elements: [Vec<String>; 5] = Default::default();
    let mut seen_elements = [false; 5];
    let mut units: [Option<(String, usize)>; 5] = Default::default();
    let mut prods: Vec<(usize, [String; 3])> = Vec::new();
    let mut deps: Vec<(usize, [String; 2])> = Vec::new();

    for (k, raw) in text.lines().enumerate() {
        let line_no = k + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let col = raw.find(line).unwrap_or(0) + 1;
        let Some((head, body)) = line.split_once(':').filter(|(h, _)| !h.contains('(')) else {
            return Err(Error::parse(line_no, col, "expected `section: ...`"));
        };
        let head = head.trim();
        let words: Vec<&str> = body.split_whitespace().collect();
        let tag_of = |s: &str| {
            s.parse::<Tag>()
                .map_err(|_| Error::parse(line_no, col, format!("unknown type `{s}`")))
        };
        match head.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["variant"] => {
                let v = words.first().copied().unwrap_or("");
                variant = Some(
                    v.parse::<Variant>()
                        .map_err(|_| Error::parse(line_no, col, format!("unknown variant `{v}`")))?,
                );
            }
            ["elements", t] => {
                let t = tag_of(t)?;
                if seen_elements[t.index()] {
                    return Err(Error::parse(line_no, col, format!("elements of type {t} listed twice")));
                }
                seen_elements[t.index()] = true;
                elements[t.index()] = words.iter().map(|w| w.to_string()).collect();
            }
            ["unit", t] => {
                let t = tag_of(t)?;
                let [w] = words.as_slice() else {
                    return Err(Error::parse(line_no, col, "unit takes one element"));
                };
                units[t.index()] = Some((w.to_string(), line_no));
            }
            ["prod"] => match words.as_slice() {
                [a, b, "=", c] => prods.push((line_no, [a.to_string(), b.to_string(), c.to_string()])),
                _ => return Err(Error::parse(line_no, col, "expected `prod: x y = z`")),
            },
            ["dep"] => match words.as_slice() {
                [a, b] => deps.push((line_no, [a.to_string(), b.to_string()])),
                _ => return Err(Error::parse(line_no, col, "expected `dep: x y`")),
            },
            _ => return Err(Error::parse(line_no, col, format!("unknown section `{head}`"))),
        }
    }

    let variant = variant.ok_or_else(|| Error::parse(1, 1, "missing `variant:` line"))?;
    let sizes = elements.each_ref().map(Vec::len);
    let names: Vec<String> = elements.iter().flatten().cloned().collect();
    let mut index: HashMap<&str, usize> = HashMap::new();
    for (i, name) in names.iter().enumerate() {
        if index.insert(name.as_str(), i).is_some() {
            return Err(Error::InvalidAlgebra(format!("element `{name}` declared twice")));
        }
    }
    let lookup = |name: &str, line: usize| {
        index
            .get(name)
            .copied()
            .ok_or_else(|| Error::parse(line, 1, format!("unknown element `{name}`")))
    };
    let n = names.len();
    let mut set = DependentSet::discrete(sizes);
    for (line, [a, b]) in &deps {
        let (a, b) = (lookup(a, *line)?, lookup(b, *line)?);
        set.relate(a, b);
    }
    let unit_ids = match variant {
        Variant::Positive => {
            if let Some((_, line)) = units.iter().flatten().next() {
                return Err(Error::parse(*line, 1, "positive algebras have no units"));
            }
            None
        }
        Variant::Unital => {
            let mut u = [0; 5];
            for t in Tag::ALL {
                let (name, line) = units[t.index()]
                    .as_ref()
                    .ok_or_else(|| Error::InvalidAlgebra(format!("missing unit of type {t}")))?;
                u[t.index()] = lookup(name, *line)?;
            }
            Some(u)
        }
    };
    let mut prod = vec![UNDEFINED; n * n];
    for (line, [a, b, c]) in &prods {
        let (a, b, c) = (lookup(a, *line)?, lookup(b, *line)?, lookup(c, *line)?);
        let slot = &mut prod[a * n + b];
        if *slot != UNDEFINED && *slot != c as u32 {
            return Err(Error::parse(*line, 1, "conflicting product"));
        }
        *slot = c as u32;
    }
    let alg = SyncAlgebra::from_table(variant, set, names, prod, unit_ids)?;
    if validate {
        if let Some(v) = alg.validate().into_iter().next() {
            return Err(Error::InvalidAlgebra(v.to_string()));
        }
    }
    Ok(alg)
}
