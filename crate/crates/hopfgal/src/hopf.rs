//! Hopf-algebraic metadata: the structure group as a group algebra,
//! coactions-as-gradings, and a full coalgebra structure on presets that are
//! themselves Hopf algebras.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::HgError;
use crate::ncpoly::{GradeGroup, NcPoly, Word};
use crate::rewrite::Presentation;
use crate::scalar::Scalar;
use crate::tensor::{Factor, FactorPoly, Slot, TensorElem};

/// Element of the group algebra `k[Gamma]`: a finite sum of group-likes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElem {
    pub group: GradeGroup,
    pub terms: BTreeMap<i64, Scalar>,
}

impl GroupAlgebraElem {
    pub fn zero(group: GradeGroup) -> Self {
        GroupAlgebraElem {
            group,
            terms: BTreeMap::new(),
        }
    }

    pub fn group_like(group: GradeGroup, g: i64) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(group.norm(g), Scalar::one());
        GroupAlgebraElem { group, terms }
    }

    pub fn add_term(&mut self, g: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let g = self.group.norm(g);
        let cur = self.terms.remove(&g).unwrap_or_else(Scalar::zero);
        let next = cur.add(&c);
        if !next.is_zero() {
            self.terms.insert(g, next);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The structure Hopf algebra `H = k[Gamma]` for `Gamma` in `{Z, Z/2}`.
///
/// Group-likes satisfy the Hopf axioms on the nose; the augmentation ideal is
/// spanned by `g - e`.
#[derive(Clone, Copy, Debug)]
pub struct GroupHopf {
    pub group: GradeGroup,
}

impl GroupHopf {
    /// Right adjoint coaction on a group-like. For abelian `Gamma` the
    /// `S(h1) h3` leg collapses to the neutral element: `g (x) e`.
    pub fn ad_r(&self, g: i64) -> (i64, i64) {
        (self.group.norm(g), 0)
    }

    pub fn counit(&self, _g: i64) -> Scalar {
        Scalar::one()
    }

    pub fn antipode(&self, g: i64) -> i64 {
        self.group.inv(g)
    }
}

/// Coalgebra data on a preset that is itself a Hopf algebra: the coproduct,
/// counit, and antipode on generators, extended as (anti)algebra maps.
#[derive(Debug)]
pub struct HopfStructure {
    /// `delta[g]` is `Delta(g)` as an element of `P (x) P`.
    pub delta: Vec<TensorElem>,
    /// `counit[g]` is `eps(g)`.
    pub counit: Vec<Scalar>,
    /// `antipode[g]` is `S(g)` in normal form.
    pub antipode: Vec<NcPoly>,
}

impl HopfStructure {
    /// Validates `(eps (x) id) . Delta = id` and `m . (S (x) id) . Delta = eps 1`
    /// on every generator.
    pub fn validate(&self, pres: &Arc<Presentation>) -> Result<(), HgError> {
        for g in 0..pres.table.len() {
            let gen = NcPoly::generator(&pres.table, g as u8);
            let d = &self.delta[g];
            // (eps (x) id) . Delta = id
            let collapsed = self.apply_counit_first(d)?;
            if pres.normal_form(&collapsed) != pres.normal_form(&gen) {
                return Err(HgError::Other(format!(
                    "counit axiom fails on generator {}",
                    pres.table.gens[g].name
                )));
            }
            // m . (S (x) id) . Delta = eps(g) 1
            let sd = self.apply_antipode_first(pres, d)?;
            let m = sd.contract_m(0)?;
            let expected = TensorElem::pure(
                pres,
                self.counit[g].clone(),
                &[FactorPoly::P(NcPoly::one(&pres.table))],
            )?;
            if m != expected {
                return Err(HgError::Other(format!(
                    "antipode axiom fails on generator {}",
                    pres.table.gens[g].name
                )));
            }
        }
        Ok(())
    }

    /// `Delta` extended to any element as an algebra map into `P (x) P`.
    pub fn delta_of(&self, pres: &Arc<Presentation>, p: &NcPoly) -> Result<TensorElem, HgError> {
        let nf = pres.normal_form(p);
        let mut out = TensorElem::zero(pres, vec![Slot::P, Slot::P]);
        for (w, c) in &nf.terms {
            let mut acc = TensorElem::one2(pres).scale(c);
            for &g in &w.0 {
                acc = acc.mul_factorwise(&self.delta[g as usize])?;
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// `eps` extended to any element as an algebra map.
    pub fn counit_of(&self, pres: &Arc<Presentation>, p: &NcPoly) -> Result<Scalar, HgError> {
        let nf = pres.normal_form(p);
        let mut out = Scalar::zero();
        for (w, c) in &nf.terms {
            let mut acc = c.clone();
            for &g in &w.0 {
                acc = acc.mul(&self.counit[g as usize]);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// `S` extended to any element as an antihomomorphism.
    pub fn antipode_of(&self, pres: &Arc<Presentation>, p: &NcPoly) -> Result<NcPoly, HgError> {
        let nf = pres.normal_form(p);
        let mut out = NcPoly::zero(&pres.table);
        for (w, c) in &nf.terms {
            let mut acc = NcPoly::one(&pres.table).scale(c);
            for &g in w.0.iter().rev() {
                acc = pres.mul_nf(&acc, &self.antipode[g as usize])?;
            }
            out = out.add(&acc);
        }
        Ok(pres.normal_form(&out))
    }

    fn apply_counit_first(&self, t: &TensorElem) -> Result<NcPoly, HgError> {
        t.map_first_slot_to_scalar(|w: &Word| {
            let mut acc = Scalar::one();
            for &g in w {
                acc = acc.mul(&self.counit[g as usize]);
            }
            acc
        })
    }

    /// `(S (x) id)` applied to an element of `P (x) P`.
    pub fn apply_antipode_first(
        &self,
        pres: &Arc<Presentation>,
        t: &TensorElem,
    ) -> Result<TensorElem, HgError> {
        let mut out = TensorElem::zero(pres, t.sig.clone());
        for (fs, c) in &t.terms {
            let Factor::Mono(u) = &fs[0] else {
                return Err(HgError::BadSlot("expected P first slot".into()));
            };
            let mut s = NcPoly::one(&pres.table);
            for &g in u.0.iter().rev() {
                s = pres.mul_nf(&s, &self.antipode[g as usize])?;
            }
            for (sw, sc) in &s.terms {
                let mut fs2 = fs.clone();
                fs2[0] = Factor::Mono(sw.clone());
                out.add_term(fs2, c.mul(sc));
            }
        }
        Ok(out)
    }
}

/// The algebra map `pi_I` onto the structure group algebra that underlies a
/// principal homogeneous preset: degree-carrying diagonal generators map to
/// group-likes, off-diagonal generators to zero.
///
/// For the quantum fibration this is `alpha -> z`, `delta -> z^-1`,
/// `beta, gamma -> 0`.
pub fn pi_quotient(
    pres: &Arc<Presentation>,
    images: &[Option<i64>],
    p: &NcPoly,
) -> GroupAlgebraElem {
    let nf = pres.normal_form(p);
    let mut out = GroupAlgebraElem::zero(pres.table.group);
    'term: for (w, c) in &nf.terms {
        let mut g = 0i64;
        for &letter in &w.0 {
            match images[letter as usize] {
                None => continue 'term,
                Some(k) => g += k,
            }
        }
        out.add_term(g, c.clone());
    }
    out
}
