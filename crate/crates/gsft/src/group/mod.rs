//! Finitely generated group models with exact normal forms.
//!
//! Every element is stored in a canonical normal form, so equality of normal
//! forms is equality in the group. Shipped models: free abelian groups of
//! rank <= 4, free groups of rank <= 3, the discrete Heisenberg group, and
//! direct products of any two shipped models.
//!
//! Generator conventions: generator 0 is the designated central generator on
//! models that have one (it is the reduction axis). For the Heisenberg model
//! the generator order is (z, x, y) with z = (0, 0, 1) central.

mod ball;
mod coset;

pub use ball::BallGraph;
pub use coset::{CosetEmbedding, Reps};

use std::collections::HashMap;
use std::fmt;

/// One letter of a free-group word: generator index plus inversion flag.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Letter {
    pub gen: u8,
    pub inv: bool,
}

/// Normal form of a group element. Which variant is legal depends on the
/// model; `GroupModel::validate` checks membership.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum GroupElement {
    /// Integer coordinate vector, one entry per generator.
    Abelian(Vec<i64>),
    /// Reduced word: no adjacent letter cancels its neighbour.
    Free(Vec<Letter>),
    /// Heisenberg triple (a, b, c) under
    /// (a, b, c) * (a', b', c') = (a + a', b + b', c + c' + a * b').
    Heis(i64, i64, i64),
    /// Direct product pair.
    Pair(Box<GroupElement>, Box<GroupElement>),
}

/// A signed generator reference inside a word.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WordLetter {
    pub gen: usize,
    pub inv: bool,
}

impl WordLetter {
    pub fn new(gen: usize, inv: bool) -> Self {
        WordLetter { gen, inv }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("unknown group model `{0}`")]
    UnknownModel(String),
    #[error("{model} rank {rank} outside the supported range {min}..={max}")]
    RankOutOfRange {
        model: &'static str,
        rank: usize,
        min: usize,
        max: usize,
    },
    #[error("element {element} does not belong to model {model}")]
    ModelMismatch { model: String, element: String },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("integer overflow in group arithmetic")]
    Overflow,
    #[error("model {0} has no designated central generator, cyclic membership is unavailable")]
    NoCentralOracle(String),
    #[error("ball enumeration exceeded the vertex cap {cap}")]
    BallBudget { cap: usize },
    #[error("word-norm search exceeded the vertex cap {cap}")]
    NormBudget { cap: usize },
}

const ABELIAN_NAMES: [&str; 4] = ["x", "y", "z", "w"];
const FREE_NAMES: [&str; 3] = ["x", "y", "z"];
const HEIS_NAMES: [&str; 3] = ["z", "x", "y"];

/// A finitely generated group model with a fixed ordered generating set.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupModel {
    FreeAbelian(usize),
    FreeGroup(usize),
    Heisenberg,
    Product(Box<GroupModel>, Box<GroupModel>),
}

impl fmt::Display for GroupModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl GroupModel {
    /// Parses a model name: `z`, `z2`..`z4`, `free1`..`free3`, `heisenberg`,
    /// or `product:<left>:<right>` (the first split that parses wins).
    pub fn from_name(name: &str) -> Result<Self, GroupError> {
        match name {
            "z" => return Ok(GroupModel::FreeAbelian(1)),
            "z2" => return Ok(GroupModel::FreeAbelian(2)),
            "z3" => return Ok(GroupModel::FreeAbelian(3)),
            "z4" => return Ok(GroupModel::FreeAbelian(4)),
            "free1" => return Ok(GroupModel::FreeGroup(1)),
            "free2" => return Ok(GroupModel::FreeGroup(2)),
            "free3" => return Ok(GroupModel::FreeGroup(3)),
            "heisenberg" => return Ok(GroupModel::Heisenberg),
            _ => {}
        }
        if let Some(rest) = name.strip_prefix("product:") {
            // Split at each `:` until both halves parse.
            for (pos, _) in rest.match_indices(':') {
                if let (Ok(left), Ok(right)) = (
                    GroupModel::from_name(&rest[..pos]),
                    GroupModel::from_name(&rest[pos + 1..]),
                ) {
                    return Ok(GroupModel::Product(Box::new(left), Box::new(right)));
                }
            }
        }
        Err(GroupError::UnknownModel(name.to_string()))
    }

    pub fn name(&self) -> String {
        match self {
            GroupModel::FreeAbelian(1) => "z".into(),
            GroupModel::FreeAbelian(n) => format!("z{n}"),
            GroupModel::FreeGroup(k) => format!("free{k}"),
            GroupModel::Heisenberg => "heisenberg".into(),
            GroupModel::Product(a, b) => format!("product:{}:{}", a.name(), b.name()),
        }
    }

    pub fn generator_count(&self) -> usize {
        match self {
            GroupModel::FreeAbelian(n) => *n,
            GroupModel::FreeGroup(k) => *k,
            GroupModel::Heisenberg => 3,
            GroupModel::Product(a, b) => a.generator_count() + b.generator_count(),
        }
    }

    /// Ordered generator names. Product models keep left names and rename
    /// colliding right names by appending `p` until unique.
    pub fn generator_names(&self) -> Vec<String> {
        match self {
            GroupModel::FreeAbelian(n) => {
                ABELIAN_NAMES[..*n].iter().map(|s| s.to_string()).collect()
            }
            GroupModel::FreeGroup(k) => FREE_NAMES[..*k].iter().map(|s| s.to_string()).collect(),
            GroupModel::Heisenberg => HEIS_NAMES.iter().map(|s| s.to_string()).collect(),
            GroupModel::Product(a, b) => {
                let mut names = a.generator_names();
                for right in b.generator_names() {
                    let mut candidate = right;
                    while names.contains(&candidate) {
                        candidate.push('p');
                    }
                    names.push(candidate);
                }
                names
            }
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            GroupModel::FreeAbelian(n) => GroupElement::Abelian(vec![0; *n]),
            GroupModel::FreeGroup(_) => GroupElement::Free(Vec::new()),
            GroupModel::Heisenberg => GroupElement::Heis(0, 0, 0),
            GroupModel::Product(a, b) => {
                GroupElement::Pair(Box::new(a.identity()), Box::new(b.identity()))
            }
        }
    }

    pub fn generator(&self, idx: usize) -> GroupElement {
        assert!(idx < self.generator_count(), "generator index out of range");
        match self {
            GroupModel::FreeAbelian(n) => {
                let mut v = vec![0; *n];
                v[idx] = 1;
                GroupElement::Abelian(v)
            }
            GroupModel::FreeGroup(_) => GroupElement::Free(vec![Letter {
                gen: idx as u8,
                inv: false,
            }]),
            GroupModel::Heisenberg => match idx {
                0 => GroupElement::Heis(0, 0, 1),
                1 => GroupElement::Heis(1, 0, 0),
                _ => GroupElement::Heis(0, 1, 0),
            },
            GroupModel::Product(a, b) => {
                let la = a.generator_count();
                if idx < la {
                    GroupElement::Pair(Box::new(a.generator(idx)), Box::new(b.identity()))
                } else {
                    GroupElement::Pair(Box::new(a.identity()), Box::new(b.generator(idx - la)))
                }
            }
        }
    }

    /// Checks that the ranks stay inside the shipped range.
    pub fn validate_model(&self) -> Result<(), GroupError> {
        match self {
            GroupModel::FreeAbelian(n) => {
                if !(1..=4).contains(n) {
                    return Err(GroupError::RankOutOfRange {
                        model: "free abelian",
                        rank: *n,
                        min: 1,
                        max: 4,
                    });
                }
            }
            GroupModel::FreeGroup(k) => {
                if !(1..=3).contains(k) {
                    return Err(GroupError::RankOutOfRange {
                        model: "free group",
                        rank: *k,
                        min: 1,
                        max: 3,
                    });
                }
            }
            GroupModel::Heisenberg => {}
            GroupModel::Product(a, b) => {
                a.validate_model()?;
                b.validate_model()?;
            }
        }
        Ok(())
    }

    /// Membership check: the element's shape matches this model and the
    /// normal form is canonical (reduced words, correct dimensions).
    pub fn validate(&self, g: &GroupElement) -> Result<(), GroupError> {
        let ok = match (self, g) {
            (GroupModel::FreeAbelian(n), GroupElement::Abelian(v)) => v.len() == *n,
            (GroupModel::FreeGroup(k), GroupElement::Free(w)) => {
                w.iter().all(|l| (l.gen as usize) < *k)
                    && w.windows(2).all(|p| p[0].gen != p[1].gen || p[0].inv == p[1].inv)
            }
            (GroupModel::Heisenberg, GroupElement::Heis(..)) => true,
            (GroupModel::Product(a, b), GroupElement::Pair(u, v)) => {
                a.validate(u).is_ok() && b.validate(v).is_ok()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(GroupError::ModelMismatch {
                model: self.name(),
                element: format!("{g:?}"),
            })
        }
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.validate(g)?;
        self.validate(h)?;
        self.multiply_unchecked(g, h)
    }

    fn multiply_unchecked(
        &self,
        g: &GroupElement,
        h: &GroupElement,
    ) -> Result<GroupElement, GroupError> {
        match (self, g, h) {
            (GroupModel::FreeAbelian(_), GroupElement::Abelian(u), GroupElement::Abelian(v)) => {
                let mut out = Vec::with_capacity(u.len());
                for (a, b) in u.iter().zip(v) {
                    out.push(a.checked_add(*b).ok_or(GroupError::Overflow)?);
                }
                Ok(GroupElement::Abelian(out))
            }
            (GroupModel::FreeGroup(_), GroupElement::Free(u), GroupElement::Free(v)) => {
                let mut out = u.clone();
                for &l in v {
                    match out.last() {
                        Some(&last) if last.gen == l.gen && last.inv != l.inv => {
                            out.pop();
                        }
                        _ => out.push(l),
                    }
                }
                Ok(GroupElement::Free(out))
            }
            (GroupModel::Heisenberg, &GroupElement::Heis(a, b, c), &GroupElement::Heis(d, e, f)) => {
                let twist = a.checked_mul(e).ok_or(GroupError::Overflow)?;
                Ok(GroupElement::Heis(
                    a.checked_add(d).ok_or(GroupError::Overflow)?,
                    b.checked_add(e).ok_or(GroupError::Overflow)?,
                    c.checked_add(f)
                        .and_then(|s| s.checked_add(twist))
                        .ok_or(GroupError::Overflow)?,
                ))
            }
            (
                GroupModel::Product(ma, mb),
                GroupElement::Pair(u1, v1),
                GroupElement::Pair(u2, v2),
            ) => Ok(GroupElement::Pair(
                Box::new(ma.multiply_unchecked(u1, u2)?),
                Box::new(mb.multiply_unchecked(v1, v2)?),
            )),
            _ => unreachable!("validated above"),
        }
    }

    pub fn inverse(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        self.validate(g)?;
        match (self, g) {
            (GroupModel::FreeAbelian(_), GroupElement::Abelian(v)) => {
                let mut out = Vec::with_capacity(v.len());
                for a in v {
                    out.push(a.checked_neg().ok_or(GroupError::Overflow)?);
                }
                Ok(GroupElement::Abelian(out))
            }
            (GroupModel::FreeGroup(_), GroupElement::Free(w)) => Ok(GroupElement::Free(
                w.iter()
                    .rev()
                    .map(|l| Letter {
                        gen: l.gen,
                        inv: !l.inv,
                    })
                    .collect(),
            )),
            (GroupModel::Heisenberg, &GroupElement::Heis(a, b, c)) => {
                // (a, b, c)^-1 = (-a, -b, a*b - c).
                let ab = a.checked_mul(b).ok_or(GroupError::Overflow)?;
                Ok(GroupElement::Heis(
                    a.checked_neg().ok_or(GroupError::Overflow)?,
                    b.checked_neg().ok_or(GroupError::Overflow)?,
                    ab.checked_sub(c).ok_or(GroupError::Overflow)?,
                ))
            }
            (GroupModel::Product(ma, mb), GroupElement::Pair(u, v)) => Ok(GroupElement::Pair(
                Box::new(ma.inverse(u)?),
                Box::new(mb.inverse(v)?),
            )),
            _ => unreachable!("validated above"),
        }
    }

    /// Parses generator names with a `-` prefix marking inverses.
    pub fn parse_word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<WordLetter>, GroupError> {
        let table = self.generator_names();
        let mut out = Vec::with_capacity(names.len());
        for raw in names {
            let raw = raw.as_ref();
            let (name, inv) = match raw.strip_prefix('-') {
                Some(rest) => (rest, true),
                None => (raw, false),
            };
            let gen = table
                .iter()
                .position(|t| t == name)
                .ok_or_else(|| GroupError::UnknownGenerator(raw.to_string()))?;
            out.push(WordLetter { gen, inv });
        }
        Ok(out)
    }

    pub fn evaluate_word(&self, word: &[WordLetter]) -> Result<GroupElement, GroupError> {
        let mut acc = self.identity();
        for l in word {
            if l.gen >= self.generator_count() {
                return Err(GroupError::UnknownGenerator(format!("#{}", l.gen)));
            }
            let mut step = self.generator(l.gen);
            if l.inv {
                step = self.inverse(&step)?;
            }
            acc = self.multiply_unchecked(&acc, &step)?;
        }
        Ok(acc)
    }

    /// Canonical (not geodesic) word spelling an element; evaluates back to it.
    pub fn word_of(&self, g: &GroupElement) -> Result<Vec<WordLetter>, GroupError> {
        self.validate(g)?;
        fn repeat(out: &mut Vec<WordLetter>, gen: usize, count: i64) {
            for _ in 0..count.unsigned_abs() {
                out.push(WordLetter {
                    gen,
                    inv: count < 0,
                });
            }
        }
        let mut out = Vec::new();
        match (self, g) {
            (GroupModel::FreeAbelian(_), GroupElement::Abelian(v)) => {
                for (i, &c) in v.iter().enumerate() {
                    repeat(&mut out, i, c);
                }
            }
            (GroupModel::FreeGroup(_), GroupElement::Free(w)) => {
                out.extend(w.iter().map(|l| WordLetter {
                    gen: l.gen as usize,
                    inv: l.inv,
                }));
            }
            (GroupModel::Heisenberg, &GroupElement::Heis(a, b, c)) => {
                // x^a y^b z^(c - a*b) multiplies out to (a, b, c).
                repeat(&mut out, 1, a);
                repeat(&mut out, 2, b);
                repeat(&mut out, 0, c - a * b);
            }
            (GroupModel::Product(ma, mb), GroupElement::Pair(u, v)) => {
                out.extend(ma.word_of(u)?);
                let shift = ma.generator_count();
                out.extend(mb.word_of(v)?.into_iter().map(|l| WordLetter {
                    gen: l.gen + shift,
                    inv: l.inv,
                }));
            }
            _ => unreachable!("validated above"),
        }
        Ok(out)
    }

    /// Renders a word as signed generator names.
    pub fn word_names(&self, word: &[WordLetter]) -> Vec<String> {
        let table = self.generator_names();
        word.iter()
            .map(|l| {
                if l.inv {
                    format!("-{}", table[l.gen])
                } else {
                    table[l.gen].clone()
                }
            })
            .collect()
    }

    /// Human-readable element rendering for diagnostics.
    pub fn display(&self, g: &GroupElement) -> String {
        match self.word_of(g) {
            Ok(w) if w.is_empty() => "e".to_string(),
            Ok(w) => self.word_names(&w).join(" "),
            Err(_) => format!("{g:?}"),
        }
    }

    /// Exact center membership.
    pub fn is_central(&self, g: &GroupElement) -> Result<bool, GroupError> {
        self.validate(g)?;
        Ok(match (self, g) {
            (GroupModel::FreeAbelian(_), _) => true,
            (GroupModel::FreeGroup(1), _) => true,
            (GroupModel::FreeGroup(_), GroupElement::Free(w)) => w.is_empty(),
            (GroupModel::Heisenberg, &GroupElement::Heis(a, b, _)) => a == 0 && b == 0,
            (GroupModel::Product(ma, mb), GroupElement::Pair(u, v)) => {
                ma.is_central(u)? && mb.is_central(v)?
            }
            _ => unreachable!("validated above"),
        })
    }

    /// Index of the designated central generator (always 0 when present).
    /// Models whose first generator is not central and of infinite order have
    /// no designation and no cyclic-membership oracle.
    pub fn central_generator(&self) -> Option<usize> {
        match self {
            GroupModel::FreeAbelian(_) => Some(0),
            GroupModel::FreeGroup(1) => Some(0),
            GroupModel::FreeGroup(_) => None,
            GroupModel::Heisenberg => Some(0),
            GroupModel::Product(a, _) => match a.central_generator() {
                Some(0) => Some(0),
                _ => None,
            },
        }
    }

    /// Cyclic membership: `Some(k)` iff `g = a^k` for the designated central
    /// generator `a`.
    pub fn in_cyclic_subgroup(&self, g: &GroupElement) -> Result<Option<i64>, GroupError> {
        if self.central_generator().is_none() {
            return Err(GroupError::NoCentralOracle(self.name()));
        }
        self.validate(g)?;
        Ok(match (self, g) {
            (GroupModel::FreeAbelian(_), GroupElement::Abelian(v)) => {
                if v[1..].iter().all(|&c| c == 0) {
                    Some(v[0])
                } else {
                    None
                }
            }
            (GroupModel::FreeGroup(1), GroupElement::Free(w)) => {
                // A reduced word over one generator is a uniform-sign power.
                let k = w.len() as i64;
                if w.first().is_some_and(|l| l.inv) {
                    Some(-k)
                } else {
                    Some(k)
                }
            }
            (GroupModel::Heisenberg, &GroupElement::Heis(a, b, c)) => {
                if a == 0 && b == 0 {
                    Some(c)
                } else {
                    None
                }
            }
            (GroupModel::Product(ma, mb), GroupElement::Pair(u, v)) => {
                if **v == mb.identity() {
                    ma.in_cyclic_subgroup(u)?
                } else {
                    None
                }
            }
            _ => unreachable!("validated above"),
        })
    }

    /// Word norm (geodesic length) found by breadth-first search from the
    /// identity, capped at `cap` visited vertices.
    pub fn word_norm(&self, g: &GroupElement, cap: usize) -> Result<u32, GroupError> {
        self.validate(g)?;
        if *g == self.identity() {
            return Ok(0);
        }
        let mut seen: HashMap<GroupElement, u32> = HashMap::new();
        let mut queue = std::collections::VecDeque::new();
        seen.insert(self.identity(), 0);
        queue.push_back(self.identity());
        while let Some(v) = queue.pop_front() {
            let d = seen[&v];
            for s in self.signed_generators()? {
                let w = self.multiply_unchecked(&v, &s)?;
                if w == *g {
                    return Ok(d + 1);
                }
                if !seen.contains_key(&w) {
                    if seen.len() >= cap {
                        return Err(GroupError::NormBudget { cap });
                    }
                    seen.insert(w.clone(), d + 1);
                    queue.push_back(w);
                }
            }
        }
        unreachable!("the Cayley graph is connected")
    }

    /// Generators and inverses in canonical order: +g0, -g0, +g1, -g1, ...
    pub fn signed_generators(&self) -> Result<Vec<GroupElement>, GroupError> {
        let mut out = Vec::with_capacity(2 * self.generator_count());
        for i in 0..self.generator_count() {
            let g = self.generator(i);
            out.push(g.clone());
            out.push(self.inverse(&g)?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent statement of the Heisenberg law for oracle checks.
    fn heis_raw(l: (i64, i64, i64), r: (i64, i64, i64)) -> (i64, i64, i64) {
        (l.0 + r.0, l.1 + r.1, l.2 + r.2 + l.0 * r.1)
    }

    fn heis(a: i64, b: i64, c: i64) -> GroupElement {
        GroupElement::Heis(a, b, c)
    }

    #[test]
    fn model_names_round_trip() {
        for name in [
            "z",
            "z2",
            "z3",
            "z4",
            "free1",
            "free2",
            "free3",
            "heisenberg",
            "product:z:heisenberg",
            "product:product:z:z:free2",
        ] {
            let m = GroupModel::from_name(name).unwrap();
            assert_eq!(m.name(), name);
            m.validate_model().unwrap();
        }
        assert!(GroupModel::from_name("z9").is_err());
        assert!(GroupModel::from_name("product:z").is_err());
    }

    #[test]
    fn product_generator_names_stay_distinct() {
        let m = GroupModel::from_name("product:z:z").unwrap();
        assert_eq!(m.generator_names(), ["x", "xp"]);
        let m = GroupModel::from_name("product:z2:free2").unwrap();
        assert_eq!(m.generator_names(), ["x", "y", "xp", "yp"]);
    }

    #[test]
    fn heisenberg_product_matches_raw_law() {
        let m = GroupModel::Heisenberg;
        // (1,0,0) * (0,1,0) = (1,1,1): x then y picks up one twist.
        assert_eq!(
            m.multiply(&heis(1, 0, 0), &heis(0, 1, 0)).unwrap(),
            heis(1, 1, 1)
        );
        assert_eq!(heis_raw((1, 0, 0), (0, 1, 0)), (1, 1, 1));
        // Oracle sweep over a small grid of triples.
        let vals = [-2i64, -1, 0, 1, 3];
        for &a in &vals {
            for &b in &vals {
                for &c in &[-1i64, 0, 2] {
                    for &d in &vals {
                        let l = (a, b, c);
                        let r = (d, c, b);
                        let raw = heis_raw(l, r);
                        assert_eq!(
                            m.multiply(&heis(l.0, l.1, l.2), &heis(r.0, r.1, r.2)).unwrap(),
                            heis(raw.0, raw.1, raw.2)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn heisenberg_commutator_is_central_generator() {
        // x y x^-1 y^-1 computed by chaining the raw law.
        let x = (1, 0, 0);
        let y = (0, 1, 0);
        let xi = (-1, 0, 0);
        let yi = (0, -1, 0);
        let chain = heis_raw(heis_raw(heis_raw(x, y), xi), yi);
        assert_eq!(chain, (0, 0, 1));

        let m = GroupModel::Heisenberg;
        let word = m.parse_word(&["x", "y", "-x", "-y"]).unwrap();
        assert_eq!(m.evaluate_word(&word).unwrap(), heis(0, 0, 1));
        assert_eq!(m.generator(0), heis(0, 0, 1), "commutator equals g0 = z");
    }

    #[test]
    fn heisenberg_inverse_formula() {
        let m = GroupModel::Heisenberg;
        assert_eq!(m.inverse(&heis(2, 3, 5)).unwrap(), heis(-2, -3, 1));
        for a in -3..=3 {
            for b in -3..=3 {
                for c in -2..=2 {
                    let g = heis(a, b, c);
                    let inv = m.inverse(&g).unwrap();
                    assert_eq!(m.multiply(&g, &inv).unwrap(), m.identity());
                    assert_eq!(m.multiply(&inv, &g).unwrap(), m.identity());
                }
            }
        }
    }

    #[test]
    fn abelian_and_free_basics() {
        let z2 = GroupModel::FreeAbelian(2);
        let w = z2.parse_word(&["x", "x", "y", "-x"]).unwrap();
        assert_eq!(
            z2.evaluate_word(&w).unwrap(),
            GroupElement::Abelian(vec![1, 1])
        );
        assert_eq!(
            z2.inverse(&GroupElement::Abelian(vec![3, -2])).unwrap(),
            GroupElement::Abelian(vec![-3, 2])
        );

        let f2 = GroupModel::FreeGroup(2);
        let xy = f2.evaluate_word(&f2.parse_word(&["x", "y"]).unwrap()).unwrap();
        let back = f2.inverse(&xy).unwrap();
        assert_eq!(
            back,
            f2.evaluate_word(&f2.parse_word(&["-y", "-x"]).unwrap()).unwrap()
        );
        // Cancellation happens at the seam.
        let e = f2
            .evaluate_word(&f2.parse_word(&["x", "y", "-y", "-x"]).unwrap())
            .unwrap();
        assert_eq!(e, f2.identity());
    }

    #[test]
    fn group_laws_on_sampled_triples() {
        // Deterministic word sampler; 1000 triples per model.
        let models = [
            GroupModel::FreeAbelian(2),
            GroupModel::FreeAbelian(3),
            GroupModel::FreeGroup(2),
            GroupModel::Heisenberg,
            GroupModel::from_name("product:z:heisenberg").unwrap(),
        ];
        for m in &models {
            let gens = m.generator_count();
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            let mut sample = |len: usize| {
                let word: Vec<WordLetter> = (0..len)
                    .map(|_| {
                        let r = next();
                        WordLetter::new((r % gens as u64) as usize, (r >> 32) % 2 == 1)
                    })
                    .collect();
                m.evaluate_word(&word).unwrap()
            };
            for _ in 0..1000 {
                let (g, h, k) = (sample(5), sample(4), sample(6));
                let gh_k = m
                    .multiply(&m.multiply(&g, &h).unwrap(), &k)
                    .unwrap();
                let g_hk = m
                    .multiply(&g, &m.multiply(&h, &k).unwrap())
                    .unwrap();
                assert_eq!(gh_k, g_hk, "associativity in {}", m.name());
                assert_eq!(m.multiply(&g, &m.identity()).unwrap(), g);
                assert_eq!(m.multiply(&m.identity(), &g).unwrap(), g);
                let gi = m.inverse(&g).unwrap();
                assert_eq!(m.multiply(&g, &gi).unwrap(), m.identity());
            }
        }
    }

    #[test]
    fn word_of_round_trips() {
        let models = [
            GroupModel::FreeAbelian(2),
            GroupModel::FreeGroup(2),
            GroupModel::Heisenberg,
            GroupModel::from_name("product:z2:z").unwrap(),
        ];
        for m in &models {
            let gens = m.generator_count();
            let mut state = 0xdeadbeefcafef00du64;
            for _ in 0..200 {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                let len = (state % 7) as usize;
                let word: Vec<WordLetter> = (0..len)
                    .map(|i| {
                        let r = state.rotate_left(i as u32 * 7 + 1);
                        WordLetter::new((r % gens as u64) as usize, (r >> 17) % 2 == 1)
                    })
                    .collect();
                let g = m.evaluate_word(&word).unwrap();
                let spelled = m.word_of(&g).unwrap();
                assert_eq!(m.evaluate_word(&spelled).unwrap(), g);
            }
        }
        // The Heisenberg central generator spells as a plain z power.
        let m = GroupModel::Heisenberg;
        let w = m.word_of(&heis(0, 0, 3)).unwrap();
        assert_eq!(m.word_names(&w), ["z", "z", "z"]);
    }

    #[test]
    fn center_oracle() {
        let m = GroupModel::Heisenberg;
        assert!(m.is_central(&heis(0, 0, 7)).unwrap());
        assert!(!m.is_central(&heis(1, 0, 0)).unwrap());
        let f2 = GroupModel::FreeGroup(2);
        assert!(f2.is_central(&f2.identity()).unwrap());
        assert!(!f2.is_central(&f2.generator(0)).unwrap());
        let p = GroupModel::from_name("product:z:heisenberg").unwrap();
        // Left generator keeps the name x; the clashing Heisenberg x is xp.
        let central = p.evaluate_word(&p.parse_word(&["x", "z"]).unwrap()).unwrap();
        assert!(p.is_central(&central).unwrap());
        let off_centre = p.evaluate_word(&p.parse_word(&["xp"]).unwrap()).unwrap();
        assert!(!p.is_central(&off_centre).unwrap());
    }

    #[test]
    fn cyclic_membership_oracle() {
        let m = GroupModel::Heisenberg;
        assert_eq!(m.in_cyclic_subgroup(&heis(0, 0, 5)).unwrap(), Some(5));
        assert_eq!(m.in_cyclic_subgroup(&heis(1, 0, 3)).unwrap(), None);
        assert_eq!(m.in_cyclic_subgroup(&m.identity()).unwrap(), Some(0));

        let z2 = GroupModel::FreeAbelian(2);
        assert_eq!(
            z2.in_cyclic_subgroup(&GroupElement::Abelian(vec![-4, 0])).unwrap(),
            Some(-4)
        );
        assert_eq!(
            z2.in_cyclic_subgroup(&GroupElement::Abelian(vec![2, 1])).unwrap(),
            None
        );

        let f2 = GroupModel::FreeGroup(2);
        assert_eq!(
            f2.in_cyclic_subgroup(&f2.identity()),
            Err(GroupError::NoCentralOracle("free2".into()))
        );
        let f1 = GroupModel::FreeGroup(1);
        let g = f1.evaluate_word(&f1.parse_word(&["-x", "-x"]).unwrap()).unwrap();
        assert_eq!(f1.in_cyclic_subgroup(&g).unwrap(), Some(-2));
    }

    #[test]
    fn word_norm_small_cases() {
        let m = GroupModel::Heisenberg;
        assert_eq!(m.word_norm(&m.identity(), 10_000).unwrap(), 0);
        assert_eq!(m.word_norm(&heis(0, 0, 1), 10_000).unwrap(), 1);
        // z^2 needs two letters; (1,1,1) = x y needs two.
        assert_eq!(m.word_norm(&heis(0, 0, 2), 10_000).unwrap(), 2);
        assert_eq!(m.word_norm(&heis(1, 1, 1), 10_000).unwrap(), 2);
        let z2 = GroupModel::FreeAbelian(2);
        assert_eq!(
            z2.word_norm(&GroupElement::Abelian(vec![2, -1]), 10_000).unwrap(),
            3
        );
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let m = GroupModel::FreeAbelian(2);
        let wrong = GroupElement::Abelian(vec![1, 2, 3]);
        assert!(matches!(
            m.multiply(&m.identity(), &wrong),
            Err(GroupError::ModelMismatch { .. })
        ));
        let unreduced = GroupElement::Free(vec![
            Letter { gen: 0, inv: false },
            Letter { gen: 0, inv: true },
        ]);
        assert!(GroupModel::FreeGroup(1).validate(&unreduced).is_err());
    }
}
