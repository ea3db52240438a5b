//! Subshifts of finite type over a group model.
//!
//! An SFT is an alphabet plus a finite list of forbidden patterns. A pattern
//! assigns symbols to a finite set of group elements; it appears in a
//! configuration x at position i when x(i * j) matches the pattern at every
//! domain point j. Local admissibility of a finite partial configuration
//! means no forbidden pattern appears with its translated domain fully inside
//! the support; it is monotone under restriction.

mod recode;

pub use recode::to_one_step;

use std::collections::BTreeMap;

use crate::group::{GroupElement, GroupError, GroupModel};

pub type SymbolId = usize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SftError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("alphabet mismatch between configuration and subshift")]
    AlphabetMismatch,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("symbol id {id} outside alphabet of size {size}")]
    SymbolOutOfRange { id: usize, size: usize },
    #[error("pattern domain is empty")]
    EmptyDomain,
    #[error("pattern domain repeats the element {0}")]
    DuplicateDomainElement(String),
    #[error("subshift is not one-step: pattern domains must be {{identity, generator}} pairs")]
    NotOneStep,
    #[error("one-step recoding exceeded the block budget {cap}")]
    RecodeTooLarge { cap: usize },
}

/// Ordered list of distinct symbol names. Recoding can legitimately produce
/// an empty alphabet (the resulting subshift is empty).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(symbols: Vec<S>) -> Result<Self, SftError> {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].contains(s) {
                return Err(SftError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, id: SymbolId) -> &str {
        &self.symbols[id]
    }

    pub fn names(&self) -> &[String] {
        &self.symbols
    }

    pub fn id_of(&self, name: &str) -> Result<SymbolId, SftError> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| SftError::UnknownSymbol(name.to_string()))
    }
}

/// A finite pattern: distinct domain elements with assigned symbols, stored
/// sorted by the canonical element order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Pattern {
    cells: Vec<(GroupElement, SymbolId)>,
}

impl Pattern {
    pub fn new(
        model: &GroupModel,
        cells: Vec<(GroupElement, SymbolId)>,
        alphabet_size: usize,
    ) -> Result<Self, SftError> {
        if cells.is_empty() {
            return Err(SftError::EmptyDomain);
        }
        let mut cells = cells;
        for (g, sym) in &cells {
            model.validate(g)?;
            if *sym >= alphabet_size {
                return Err(SftError::SymbolOutOfRange {
                    id: *sym,
                    size: alphabet_size,
                });
            }
        }
        cells.sort_by(|a, b| a.0.cmp(&b.0));
        for w in cells.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(SftError::DuplicateDomainElement(model.display(&w[0].0)));
            }
        }
        Ok(Pattern { cells })
    }

    pub fn cells(&self) -> &[(GroupElement, SymbolId)] {
        &self.cells
    }

    pub fn domain(&self) -> impl Iterator<Item = &GroupElement> {
        self.cells.iter().map(|(g, _)| g)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A finite partial configuration: symbols on a finite support.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PartialConfiguration {
    pub alphabet: Alphabet,
    cells: BTreeMap<GroupElement, SymbolId>,
}

impl PartialConfiguration {
    pub fn new(alphabet: Alphabet) -> Self {
        PartialConfiguration {
            alphabet,
            cells: BTreeMap::new(),
        }
    }

    pub fn set(&mut self, g: GroupElement, sym: SymbolId) -> Result<(), SftError> {
        if sym >= self.alphabet.len() {
            return Err(SftError::SymbolOutOfRange {
                id: sym,
                size: self.alphabet.len(),
            });
        }
        self.cells.insert(g, sym);
        Ok(())
    }

    pub fn get(&self, g: &GroupElement) -> Option<SymbolId> {
        self.cells.get(g).copied()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.cells.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&GroupElement, SymbolId)> {
        self.cells.iter().map(|(g, &s)| (g, s))
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Restriction to the intersection of the support with `domain`.
    pub fn restrict(&self, domain: &[GroupElement]) -> Self {
        let mut out = PartialConfiguration::new(self.alphabet.clone());
        for g in domain {
            if let Some(s) = self.cells.get(g) {
                out.cells.insert(g.clone(), *s);
            }
        }
        out
    }
}

/// An SFT: model, alphabet, and the forbidden pattern list.
#[derive(Clone, PartialEq, Debug)]
pub struct SftDefinition {
    pub model: GroupModel,
    pub alphabet: Alphabet,
    pub forbidden: Vec<Pattern>,
}

impl SftDefinition {
    pub fn new(
        model: GroupModel,
        alphabet: Alphabet,
        forbidden: Vec<Pattern>,
    ) -> Result<Self, SftError> {
        model.validate_model()?;
        for p in &forbidden {
            for (g, sym) in p.cells() {
                model.validate(g)?;
                if *sym >= alphabet.len() {
                    return Err(SftError::SymbolOutOfRange {
                        id: *sym,
                        size: alphabet.len(),
                    });
                }
            }
        }
        Ok(SftDefinition {
            model,
            alphabet,
            forbidden,
        })
    }

    /// Builds a one-step SFT from per-generator allowed relations.
    /// `allowed[i][a * n + b]` states symbol `a` at position p allows symbol
    /// `b` at p * g_i. Forbidden patterns are emitted for the complement, in
    /// (generator, a, b) order.
    pub fn one_step(
        model: GroupModel,
        alphabet: Alphabet,
        allowed: &[Vec<bool>],
    ) -> Result<Self, SftError> {
        assert_eq!(allowed.len(), model.generator_count());
        let n = alphabet.len();
        let mut forbidden = Vec::new();
        for (i, table) in allowed.iter().enumerate() {
            assert_eq!(table.len(), n * n);
            let g = model.generator(i);
            for a in 0..n {
                for b in 0..n {
                    if !table[a * n + b] {
                        forbidden.push(Pattern::new(
                            &model,
                            vec![(model.identity(), a), (g.clone(), b)],
                            n,
                        )?);
                    }
                }
            }
        }
        SftDefinition::new(model, alphabet, forbidden)
    }

    /// True iff every forbidden domain is {identity, g_i} for a generator g_i.
    pub fn is_one_step(&self) -> bool {
        self.one_step_view().is_ok()
    }

    /// Extracts the per-generator allowed relations of a one-step SFT.
    pub fn one_step_view(&self) -> Result<OneStepView, SftError> {
        let n = self.alphabet.len();
        let gens: Vec<GroupElement> = (0..self.model.generator_count())
            .map(|i| self.model.generator(i))
            .collect();
        let identity = self.model.identity();
        let mut allowed = vec![vec![true; n * n]; gens.len()];
        for p in &self.forbidden {
            if p.len() != 2 {
                return Err(SftError::NotOneStep);
            }
            let cells = p.cells();
            let (at_identity, other) = if cells[0].0 == identity {
                (cells[0].clone(), cells[1].clone())
            } else if cells[1].0 == identity {
                (cells[1].clone(), cells[0].clone())
            } else {
                return Err(SftError::NotOneStep);
            };
            let gen = gens
                .iter()
                .position(|g| *g == other.0)
                .ok_or(SftError::NotOneStep)?;
            allowed[gen][at_identity.1 * n + other.1] = false;
        }
        Ok(OneStepView {
            symbol_count: n,
            allowed,
        })
    }
}

/// Allowed one-step relations, one boolean matrix per generator direction.
#[derive(Clone, Debug)]
pub struct OneStepView {
    pub symbol_count: usize,
    allowed: Vec<Vec<bool>>,
}

impl OneStepView {
    pub fn allowed(&self, gen: usize, a: SymbolId, b: SymbolId) -> bool {
        self.allowed[gen][a * self.symbol_count + b]
    }

    pub fn disallowed_count(&self, gen: usize) -> usize {
        self.allowed[gen].iter().filter(|&&v| !v).count()
    }
}

/// True iff pattern `p` appears in `x` at position `at`, that is
/// x(at * j) = p(j) on the whole domain.
pub fn pattern_appears(
    model: &GroupModel,
    x: &PartialConfiguration,
    p: &Pattern,
    at: &GroupElement,
) -> Result<bool, SftError> {
    for (j, sym) in p.cells() {
        let pos = model.multiply(at, j)?;
        if x.get(&pos) != Some(*sym) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff no forbidden pattern of `s` appears in `x` at any position whose
/// translated domain lies inside the support of `x`.
pub fn locally_admissible(x: &PartialConfiguration, s: &SftDefinition) -> Result<bool, SftError> {
    if x.alphabet != s.alphabet {
        return Err(SftError::AlphabetMismatch);
    }
    for p in &s.forbidden {
        // Candidate positions: translates aligning the first domain cell
        // with a support element; every full occurrence is among them.
        let d0 = &p.cells()[0].0;
        let d0_inv = s.model.inverse(d0)?;
        let mut seen = std::collections::HashSet::new();
        for g in x.support() {
            let at = s.model.multiply(g, &d0_inv)?;
            if !seen.insert(at.clone()) {
                continue;
            }
            if pattern_appears(&s.model, x, p, &at)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::WordLetter;

    fn z_model() -> GroupModel {
        GroupModel::FreeAbelian(1)
    }

    fn zel(k: i64) -> GroupElement {
        GroupElement::Abelian(vec![k])
    }

    fn ab() -> Alphabet {
        Alphabet::new(vec!["a", "b"]).unwrap()
    }

    /// Z-SFT forbidding the 2-block (a at 0, b at 1).
    fn forbid_ab() -> SftDefinition {
        let m = z_model();
        let p = Pattern::new(&m, vec![(zel(0), 0), (zel(1), 1)], 2).unwrap();
        SftDefinition::new(m, ab(), vec![p]).unwrap()
    }

    #[test]
    fn alphabet_rejects_duplicates() {
        assert_eq!(
            Alphabet::new(vec!["a", "a"]),
            Err(SftError::DuplicateSymbol("a".into()))
        );
        assert!(Alphabet::new(Vec::<String>::new()).unwrap().is_empty());
    }

    #[test]
    fn pattern_rejects_duplicate_domain_points() {
        let m = GroupModel::Heisenberg;
        // Two spellings of the same normal form collide.
        let z1 = m
            .evaluate_word(&m.parse_word(&["x", "y", "-x", "-y"]).unwrap())
            .unwrap();
        let z2 = m.generator(0);
        assert!(matches!(
            Pattern::new(&m, vec![(z1, 0), (z2, 1)], 2),
            Err(SftError::DuplicateDomainElement(_))
        ));
    }

    #[test]
    fn appears_and_admissibility() {
        let s = forbid_ab();
        let mut x = PartialConfiguration::new(ab());
        x.set(zel(0), 0).unwrap();
        x.set(zel(1), 1).unwrap();
        x.set(zel(2), 0).unwrap();
        let p = &s.forbidden[0];
        assert!(pattern_appears(&s.model, &x, p, &zel(0)).unwrap());
        assert!(!pattern_appears(&s.model, &x, p, &zel(1)).unwrap());
        // Occurrence straddling missing support does not count.
        assert!(!pattern_appears(&s.model, &x, p, &zel(2)).unwrap());
        assert!(!locally_admissible(&x, &s).unwrap());

        let mut y = PartialConfiguration::new(ab());
        y.set(zel(0), 1).unwrap();
        y.set(zel(1), 0).unwrap();
        assert!(locally_admissible(&y, &s).unwrap());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let s = forbid_ab();
        let x = PartialConfiguration::new(Alphabet::new(vec!["a", "b", "c"]).unwrap());
        assert_eq!(locally_admissible(&x, &s), Err(SftError::AlphabetMismatch));
    }

    #[test]
    fn restriction_preserves_admissibility() {
        // Monotone: admissible stays admissible under restriction.
        let s = forbid_ab();
        // a b a b a b hits the forbidden block immediately.
        let mut x = PartialConfiguration::new(ab());
        for i in 0..6 {
            x.set(zel(i), (i % 2) as usize).unwrap();
        }
        assert!(!locally_admissible(&x, &s).unwrap());
        // b b b a a a: once a appears, no later b, so no (a, b) block.
        let mut y = PartialConfiguration::new(ab());
        for i in 0..6 {
            y.set(zel(i), if i < 3 { 1 } else { 0 }).unwrap();
        }
        assert!(locally_admissible(&y, &s).unwrap());
        let dom: Vec<GroupElement> = (1..4).map(zel).collect();
        let r = y.restrict(&dom);
        assert_eq!(r.len(), 3);
        assert!(locally_admissible(&r, &s).unwrap());
    }

    #[test]
    fn translation_consistency() {
        // p appears in x at i iff the i-translate of p appears at identity.
        let m = GroupModel::FreeAbelian(2);
        let alpha = ab();
        let p = Pattern::new(
            &m,
            vec![
                (GroupElement::Abelian(vec![0, 0]), 0),
                (GroupElement::Abelian(vec![1, 0]), 1),
            ],
            2,
        )
        .unwrap();
        let mut x = PartialConfiguration::new(alpha.clone());
        for i in -2..=2i64 {
            for j in -2..=2i64 {
                x.set(
                    GroupElement::Abelian(vec![i, j]),
                    ((i + j).rem_euclid(2)) as usize,
                )
                .unwrap();
            }
        }
        for i in -1..=1i64 {
            for j in -1..=1i64 {
                let at = GroupElement::Abelian(vec![i, j]);
                let direct = pattern_appears(&m, &x, &p, &at).unwrap();
                // Translate the pattern instead of the position.
                let shifted = Pattern::new(
                    &m,
                    p.cells()
                        .iter()
                        .map(|(g, s)| (m.multiply(&at, g).unwrap(), *s))
                        .collect(),
                    2,
                )
                .unwrap();
                let via_translate =
                    pattern_appears(&m, &x, &shifted, &m.identity()).unwrap();
                assert_eq!(direct, via_translate);
            }
        }
    }

    #[test]
    fn one_step_view_extraction() {
        let s = forbid_ab();
        assert!(s.is_one_step());
        let v = s.one_step_view().unwrap();
        assert!(!v.allowed(0, 0, 1));
        assert!(v.allowed(0, 1, 0));
        assert_eq!(v.disallowed_count(0), 1);

        // A 1-cell forbidden pattern breaks the one-step shape.
        let m = z_model();
        let p1 = Pattern::new(&m, vec![(zel(0), 0)], 2).unwrap();
        let s1 = SftDefinition::new(m, ab(), vec![p1]).unwrap();
        assert!(!s1.is_one_step());

        // Round trip through the one_step builder.
        let m = GroupModel::FreeAbelian(2);
        let mut hor = vec![true; 4];
        hor[0] = false; // forbid (a, a) horizontally
        let ver = vec![true; 4];
        let s2 = SftDefinition::one_step(m, ab(), &[hor, ver]).unwrap();
        let v2 = s2.one_step_view().unwrap();
        assert!(!v2.allowed(0, 0, 0));
        assert!(v2.allowed(1, 0, 0));
        assert_eq!(s2.forbidden.len(), 1);
    }

    #[test]
    fn empty_alphabet_sft_is_consistent() {
        let m = z_model();
        let s = SftDefinition::new(m, Alphabet::new(Vec::<String>::new()).unwrap(), vec![])
            .unwrap();
        assert!(s.is_one_step());
        let x = PartialConfiguration::new(s.alphabet.clone());
        assert!(locally_admissible(&x, &s).unwrap());
    }

    #[test]
    fn heisenberg_pattern_occurrences() {
        // Domain {1, z} matched against a configuration on the radius-1 ball.
        let m = GroupModel::Heisenberg;
        let p = Pattern::new(
            &m,
            vec![(m.identity(), 0), (m.generator(0), 0)],
            2,
        )
        .unwrap();
        let s = SftDefinition::new(m.clone(), ab(), vec![p]).unwrap();
        let mut x = PartialConfiguration::new(ab());
        let ball = crate::group::BallGraph::build(&m, 1, 10_000).unwrap();
        for v in &ball.vertices {
            x.set(v.clone(), 0).unwrap();
        }
        // z^-1 -> 1 and 1 -> z are both occurrences of (a, a).
        assert!(!locally_admissible(&x, &s).unwrap());
        let w = m.evaluate_word(&[WordLetter::new(0, true)]).unwrap();
        let p_at = pattern_appears(&m, &x, &s.forbidden[0], &w).unwrap();
        assert!(p_at);
    }
}
