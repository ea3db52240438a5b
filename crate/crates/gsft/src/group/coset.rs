//! Coset decompositions for shipped subgroup embeddings.
//!
//! Each embedding fixes a set of left-coset representatives and writes every
//! ambient element as g = f(g) * embed(h(g)) with f(g) a representative and
//! h(g) a subgroup element in the subgroup's own normal form.

use super::{GroupElement, GroupError, GroupModel};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Kind {
    /// Z as the first axis of Z^2; representatives (0, m).
    ZInZ2,
    /// 2Z inside Z; representatives {0, 1}; embed(k) = 2k.
    TwoZInZ,
    /// The central <z> inside Heisenberg; representatives (a, b, 0).
    ZInHeisenberg,
}

/// Description of the left-coset representative set.
#[derive(Clone, Debug)]
pub enum Reps {
    Finite(Vec<GroupElement>),
    /// Infinitely many representatives, characterised by a predicate and a
    /// human-readable description.
    Described(&'static str),
}

#[derive(Clone, Debug)]
pub struct CosetEmbedding {
    pub name: &'static str,
    pub ambient: GroupModel,
    pub subgroup: GroupModel,
    /// Subgroup index in the ambient group when finite.
    pub index: Option<u64>,
    kind: Kind,
}

impl CosetEmbedding {
    pub fn z_in_z2() -> Self {
        CosetEmbedding {
            name: "z-in-z2",
            ambient: GroupModel::FreeAbelian(2),
            subgroup: GroupModel::FreeAbelian(1),
            index: None,
            kind: Kind::ZInZ2,
        }
    }

    pub fn two_z_in_z() -> Self {
        CosetEmbedding {
            name: "2z-in-z",
            ambient: GroupModel::FreeAbelian(1),
            subgroup: GroupModel::FreeAbelian(1),
            index: Some(2),
            kind: Kind::TwoZInZ,
        }
    }

    pub fn z_in_heisenberg() -> Self {
        CosetEmbedding {
            name: "z-in-heisenberg",
            ambient: GroupModel::Heisenberg,
            subgroup: GroupModel::FreeAbelian(1),
            index: None,
            kind: Kind::ZInHeisenberg,
        }
    }

    pub fn all() -> Vec<Self> {
        vec![Self::z_in_z2(), Self::two_z_in_z(), Self::z_in_heisenberg()]
    }

    pub fn from_name(name: &str) -> Result<Self, GroupError> {
        Self::all()
            .into_iter()
            .find(|e| e.name == name)
            .ok_or_else(|| GroupError::UnknownModel(format!("embedding {name}")))
    }

    /// Maps a subgroup element into the ambient group.
    pub fn embed(&self, h: &GroupElement) -> Result<GroupElement, GroupError> {
        self.subgroup.validate(h)?;
        Ok(match (self.kind, h) {
            (Kind::ZInZ2, GroupElement::Abelian(v)) => GroupElement::Abelian(vec![v[0], 0]),
            (Kind::TwoZInZ, GroupElement::Abelian(v)) => {
                GroupElement::Abelian(vec![v[0].checked_mul(2).ok_or(GroupError::Overflow)?])
            }
            (Kind::ZInHeisenberg, GroupElement::Abelian(v)) => GroupElement::Heis(0, 0, v[0]),
            _ => unreachable!("validated above"),
        })
    }

    /// Writes g = rep * embed(h); returns (rep, h).
    pub fn decompose(&self, g: &GroupElement) -> Result<(GroupElement, GroupElement), GroupError> {
        self.ambient.validate(g)?;
        Ok(match (self.kind, g) {
            (Kind::ZInZ2, GroupElement::Abelian(v)) => (
                GroupElement::Abelian(vec![0, v[1]]),
                GroupElement::Abelian(vec![v[0]]),
            ),
            (Kind::TwoZInZ, GroupElement::Abelian(v)) => {
                let rep = v[0].rem_euclid(2);
                (
                    GroupElement::Abelian(vec![rep]),
                    GroupElement::Abelian(vec![(v[0] - rep) / 2]),
                )
            }
            (Kind::ZInHeisenberg, &GroupElement::Heis(a, b, c)) => {
                // (a, b, 0) * (0, 0, c) = (a, b, c); the twist vanishes.
                (GroupElement::Heis(a, b, 0), GroupElement::Abelian(vec![c]))
            }
            _ => unreachable!("validated above"),
        })
    }

    /// True iff g is one of the declared coset representatives.
    pub fn is_representative(&self, g: &GroupElement) -> Result<bool, GroupError> {
        self.ambient.validate(g)?;
        Ok(match (self.kind, g) {
            (Kind::ZInZ2, GroupElement::Abelian(v)) => v[0] == 0,
            (Kind::TwoZInZ, GroupElement::Abelian(v)) => v[0] == 0 || v[0] == 1,
            (Kind::ZInHeisenberg, &GroupElement::Heis(_, _, c)) => c == 0,
            _ => unreachable!("validated above"),
        })
    }

    pub fn representatives(&self) -> Reps {
        match self.kind {
            Kind::ZInZ2 => Reps::Described("(0, m) for m in Z"),
            Kind::TwoZInZ => Reps::Finite(vec![
                GroupElement::Abelian(vec![0]),
                GroupElement::Abelian(vec![1]),
            ]),
            Kind::ZInHeisenberg => Reps::Described("(a, b, 0) for a, b in Z"),
        }
    }
}
