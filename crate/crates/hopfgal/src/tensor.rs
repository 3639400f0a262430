//! Elements of `P (x) P`, `P (x) H`, and longer tensor products with
//! per-slot normal forms, the universal differential, multiplication
//! contraction, the lifted canonical map, and membership tests.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::HgError;
use crate::ncpoly::{NcPoly, Word, WordKey};
use crate::rewrite::{PairKey, Presentation};
use crate::scalar::Scalar;

/// Slot kind in the factor signature.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    P,
    H,
}

/// One factor of a pure tensor: a normal-basis word of `P`, or a group-like
/// of `H` written as the exponent of the group generator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Factor {
    Mono(WordKey),
    Grp(i64),
}

/// Canonical sparse sum of pure tensors: every `P` factor is a normal-basis
/// monomial, so equality is coefficient equality.
#[derive(Clone, Debug)]
pub struct TensorElem {
    pub pres: Arc<Presentation>,
    pub sig: Vec<Slot>,
    pub terms: BTreeMap<Vec<Factor>, Scalar>,
}

impl PartialEq for TensorElem {
    fn eq(&self, other: &Self) -> bool {
        self.sig == other.sig && self.terms == other.terms
    }
}
impl Eq for TensorElem {}

/// Pre-canonical factor used to build tensors.
#[derive(Clone, Debug)]
pub enum FactorPoly {
    P(NcPoly),
    H(i64),
}

impl TensorElem {
    pub fn zero(pres: &Arc<Presentation>, sig: Vec<Slot>) -> Self {
        TensorElem {
            pres: pres.clone(),
            sig,
            terms: BTreeMap::new(),
        }
    }

    /// `1 (x) 1` in `P (x) P`.
    pub fn one2(pres: &Arc<Presentation>) -> Self {
        TensorElem::pure(pres, Scalar::one(), &[FactorPoly::P(NcPoly::one(&pres.table)), FactorPoly::P(NcPoly::one(&pres.table))])
            .unwrap()
    }

    /// Builds `coeff * f1 (x) f2 (x) ...`, expanding polynomial factors over
    /// the normal basis.
    pub fn pure(
        pres: &Arc<Presentation>,
        coeff: Scalar,
        factors: &[FactorPoly],
    ) -> Result<Self, HgError> {
        let sig = factors
            .iter()
            .map(|f| match f {
                FactorPoly::P(_) => Slot::P,
                FactorPoly::H(_) => Slot::H,
            })
            .collect();
        let mut out = TensorElem::zero(pres, sig);
        // Multilinear expansion over normal forms.
        let mut partial: Vec<(Vec<Factor>, Scalar)> = vec![(vec![], coeff)];
        for f in factors {
            let mut next = vec![];
            match f {
                FactorPoly::H(g) => {
                    let g = pres.table.group.norm(*g);
                    for (fs, c) in &partial {
                        let mut fs = fs.clone();
                        fs.push(Factor::Grp(g));
                        next.push((fs, c.clone()));
                    }
                }
                FactorPoly::P(p) => {
                    let nf = pres.normal_form(p);
                    for (fs, c) in &partial {
                        for (w, pc) in &nf.terms {
                            let mut fs = fs.clone();
                            fs.push(Factor::Mono(w.clone()));
                            next.push((fs, c.mul(pc)));
                        }
                    }
                }
            }
            partial = next;
        }
        for (fs, c) in partial {
            out.add_term(fs, c);
        }
        Ok(out)
    }

    pub fn add_term(&mut self, factors: Vec<Factor>, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(factors.len(), self.sig.len());
        match self.terms.entry(factors) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&coeff);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &TensorElem) -> TensorElem {
        debug_assert_eq!(self.sig, rhs.sig);
        let mut out = self.clone();
        for (fs, c) in &rhs.terms {
            out.add_term(fs.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &TensorElem) -> TensorElem {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> TensorElem {
        TensorElem {
            pres: self.pres.clone(),
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(fs, c)| (fs.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> TensorElem {
        if c.is_zero() {
            return TensorElem::zero(&self.pres, self.sig.clone());
        }
        TensorElem {
            pres: self.pres.clone(),
            sig: self.sig.clone(),
            terms: self
                .terms
                .iter()
                .map(|(fs, a)| (fs.clone(), a.mul(c)))
                .collect(),
        }
    }

    fn slot_word<'a>(&self, fs: &'a [Factor], slot: usize) -> Result<&'a WordKey, HgError> {
        match &fs[slot] {
            Factor::Mono(w) => Ok(w),
            Factor::Grp(_) => Err(HgError::BadSlot(format!("slot {slot} is an H slot"))),
        }
    }

    /// Multiplies the given `P` slot by `p` on the chosen side and
    /// re-canonicalizes.
    pub fn mul_slot(&self, slot: usize, p: &NcPoly, on_left: bool) -> Result<TensorElem, HgError> {
        if self.sig.get(slot) != Some(&Slot::P) {
            return Err(HgError::BadSlot(format!("slot {slot} is not a P slot")));
        }
        let mut out = TensorElem::zero(&self.pres, self.sig.clone());
        for (fs, c) in &self.terms {
            let w = self.slot_word(fs, slot)?;
            let mono = NcPoly::monomial(&self.pres.table, Scalar::one(), w.0.clone());
            let prod = if on_left {
                self.pres.mul_nf(p, &mono)?
            } else {
                self.pres.mul_nf(&mono, p)?
            };
            for (nw, nc) in &prod.terms {
                let mut fs2 = fs.clone();
                fs2[slot] = Factor::Mono(nw.clone());
                out.add_term(fs2, c.mul(nc));
            }
        }
        Ok(out)
    }

    /// Left module action `p . t` on the first slot.
    pub fn act_left(&self, p: &NcPoly) -> Result<TensorElem, HgError> {
        self.mul_slot(0, p, true)
    }

    /// Right module action `t . p` on the last `P` slot.
    pub fn act_right(&self, p: &NcPoly) -> Result<TensorElem, HgError> {
        let last = self
            .sig
            .iter()
            .rposition(|s| *s == Slot::P)
            .ok_or_else(|| HgError::BadSlot("no P slot".into()))?;
        self.mul_slot(last, p, false)
    }

    /// Multiplies slots `slot` and `slot+1` together (both `P`); arity drops.
    pub fn contract_m(&self, slot: usize) -> Result<TensorElem, HgError> {
        if self.sig.get(slot) != Some(&Slot::P) || self.sig.get(slot + 1) != Some(&Slot::P) {
            return Err(HgError::BadSlot(format!(
                "slots {slot},{} must both be P",
                slot + 1
            )));
        }
        let mut sig = self.sig.clone();
        sig.remove(slot + 1);
        let mut out = TensorElem::zero(&self.pres, sig);
        for (fs, c) in &self.terms {
            let u = self.slot_word(fs, slot)?;
            let v = self.slot_word(fs, slot + 1)?;
            let mut w = u.0.clone();
            w.extend_from_slice(&v.0);
            let prod = self.pres.nf_word(&w);
            for (nw, nc) in &prod.terms {
                let mut fs2: Vec<Factor> = fs.clone();
                fs2.remove(slot + 1);
                fs2[slot] = Factor::Mono(nw.clone());
                out.add_term(fs2, c.mul(nc));
            }
        }
        Ok(out)
    }

    /// The lifted canonical map on `P (x) P`:
    /// `chi_bar(u (x) v) = u v (x) g_(deg v)`.
    pub fn chi_bar(&self) -> Result<TensorElem, HgError> {
        if self.sig != [Slot::P, Slot::P] {
            return Err(HgError::BadSlot("chi_bar needs P (x) P".into()));
        }
        let mut out = TensorElem::zero(&self.pres, vec![Slot::P, Slot::H]);
        for (fs, c) in &self.terms {
            let u = self.slot_word(fs, 0)?;
            let v = self.slot_word(fs, 1)?;
            let g = self.pres.table.word_degree(&v.0);
            let mut w = u.0.clone();
            w.extend_from_slice(&v.0);
            let prod = self.pres.nf_word(&w);
            for (nw, nc) in &prod.terms {
                out.add_term(vec![Factor::Mono(nw.clone()), Factor::Grp(g)], c.mul(nc));
            }
        }
        Ok(out)
    }

    /// `p (x) g_(deg p)` summed over homogeneous components: the coaction.
    pub fn coaction(pres: &Arc<Presentation>, p: &NcPoly) -> TensorElem {
        let nf = pres.normal_form(p);
        let mut out = TensorElem::zero(pres, vec![Slot::P, Slot::H]);
        for (w, c) in &nf.terms {
            let g = pres.table.word_degree(&w.0);
            out.add_term(vec![Factor::Mono(w.clone()), Factor::Grp(g)], c.clone());
        }
        out
    }

    /// Universal differential `d p = 1 (x) p - p (x) 1`.
    pub fn d_universal(pres: &Arc<Presentation>, p: &NcPoly) -> TensorElem {
        let one = NcPoly::one(&pres.table);
        let a = TensorElem::pure(pres, Scalar::one(), &[FactorPoly::P(one.clone()), FactorPoly::P(p.clone())]).unwrap();
        let b = TensorElem::pure(pres, Scalar::one(), &[FactorPoly::P(p.clone()), FactorPoly::P(one)]).unwrap();
        a.sub(&b)
    }

    /// Factor-wise product `(a (x) b)(c (x) d) = ac (x) bd`.
    pub fn mul_factorwise(&self, rhs: &TensorElem) -> Result<TensorElem, HgError> {
        if self.sig != rhs.sig {
            return Err(HgError::BadSlot("signature mismatch".into()));
        }
        let mut out = TensorElem::zero(&self.pres, self.sig.clone());
        for (fs1, c1) in &self.terms {
            for (fs2, c2) in &rhs.terms {
                let coeff = c1.mul(c2);
                if coeff.is_zero() {
                    continue;
                }
                let mut expanded: Vec<(Vec<Factor>, Scalar)> = vec![(vec![], coeff)];
                for (slot, (f1, f2)) in fs1.iter().zip(fs2.iter()).enumerate() {
                    match (f1, f2) {
                        (Factor::Grp(g1), Factor::Grp(g2)) => {
                            let g = self.pres.table.group.mul(*g1, *g2);
                            for (fs, _) in expanded.iter_mut() {
                                fs.push(Factor::Grp(g));
                            }
                        }
                        (Factor::Mono(w1), Factor::Mono(w2)) => {
                            let mut w = w1.0.clone();
                            w.extend_from_slice(&w2.0);
                            let prod = self.pres.nf_word(&w);
                            let mut next = vec![];
                            for (fs, c) in &expanded {
                                for (nw, nc) in &prod.terms {
                                    let mut fs = fs.clone();
                                    fs.push(Factor::Mono(nw.clone()));
                                    next.push((fs, c.mul(nc)));
                                }
                            }
                            expanded = next;
                        }
                        _ => {
                            return Err(HgError::BadSlot(format!(
                                "slot {slot} kind mismatch in factor-wise product"
                            )));
                        }
                    }
                }
                for (fs, c) in expanded {
                    out.add_term(fs, c);
                }
            }
        }
        Ok(out)
    }

    /// The translation-style product `t * t' = sum c a (x) b d` for
    /// `t = sum a (x) b`, `t' = sum c (x) d` (first slots compose in
    /// reversed order).
    pub fn mul_translation(&self, rhs: &TensorElem) -> Result<TensorElem, HgError> {
        if self.sig != [Slot::P, Slot::P] || rhs.sig != [Slot::P, Slot::P] {
            return Err(HgError::BadSlot("translation product needs P (x) P".into()));
        }
        let mut out = TensorElem::zero(&self.pres, self.sig.clone());
        for (fs1, c1) in &self.terms {
            let a = self.slot_word(fs1, 0)?;
            let b = self.slot_word(fs1, 1)?;
            for (fs2, c2) in &rhs.terms {
                let cfac = rhs.slot_word(fs2, 0)?;
                let d = rhs.slot_word(fs2, 1)?;
                let mut first = cfac.0.clone();
                first.extend_from_slice(&a.0);
                let mut second = b.0.clone();
                second.extend_from_slice(&d.0);
                let fp = self.pres.nf_word(&first);
                let sp = self.pres.nf_word(&second);
                let c = c1.mul(c2);
                for (fw, fc) in &fp.terms {
                    for (sw, sc) in &sp.terms {
                        out.add_term(
                            vec![Factor::Mono(fw.clone()), Factor::Mono(sw.clone())],
                            c.mul(fc).mul(sc),
                        );
                    }
                }
            }
        }
        Ok(out)
    }

    /// Total degree of every pure tensor, or `None` when mixed. `H` slots
    /// contribute their group element.
    pub fn total_degree(&self) -> Option<i64> {
        self.degree_with(|g| g)
    }

    /// Total degree with `H` slots weighted by the right adjoint coaction,
    /// under which group-likes are invariant: the degree that the lifted
    /// canonical map intertwines.
    pub fn total_degree_adjoint(&self) -> Option<i64> {
        self.degree_with(|_| 0)
    }

    fn degree_with<F: Fn(i64) -> i64>(&self, h_weight: F) -> Option<i64> {
        let mut deg = None;
        for fs in self.terms.keys() {
            let mut d = 0i64;
            for f in fs {
                d += match f {
                    Factor::Mono(w) => self.pres.table.word_degree(&w.0),
                    Factor::Grp(g) => h_weight(*g),
                };
            }
            let d = self.pres.table.group.norm(d);
            match deg {
                None => deg = Some(d),
                Some(p) if p != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Membership in the named subspace of `P (x) P`, decided slot-wise:
    /// `Omega1P` is `m(t) = 0`; `BotP` is "left factors all of degree 0";
    /// `Omega1B_P` is both.
    pub fn membership(&self, space: MembershipSpace) -> Result<bool, HgError> {
        match space {
            MembershipSpace::Omega1P => Ok(self.contract_m(0)?.is_zero()),
            MembershipSpace::BotP => Ok(self.left_degrees_zero()),
            MembershipSpace::Omega1BP => {
                Ok(self.left_degrees_zero() && self.contract_m(0)?.is_zero())
            }
        }
    }

    fn left_degrees_zero(&self) -> bool {
        self.terms.keys().all(|fs| match &fs[0] {
            Factor::Mono(w) => self.pres.table.word_degree(&w.0) == 0,
            Factor::Grp(_) => false,
        })
    }

    /// A monomial with nonzero-degree left factor, if any (a non-strongness
    /// witness).
    pub fn odd_left_witness(&self) -> Option<String> {
        for fs in self.terms.keys() {
            if let Factor::Mono(w) = &fs[0] {
                if self.pres.table.word_degree(&w.0) != 0 {
                    return Some(self.show_pure(fs));
                }
            }
        }
        None
    }

    fn show_pure(&self, fs: &[Factor]) -> String {
        fs.iter()
            .map(|f| match f {
                Factor::Mono(w) => crate::rewrite::word_to_string(&self.pres.table, &w.0),
                Factor::Grp(g) => self.pres.table.group.display(*g),
            })
            .collect::<Vec<_>>()
            .join(" (x) ")
    }

    /// Arity-2 `P (x) P` element as a map over normal-word pairs.
    pub fn to_pair_map(&self) -> Result<BTreeMap<PairKey, Scalar>, HgError> {
        if self.sig != [Slot::P, Slot::P] {
            return Err(HgError::BadSlot("expected P (x) P".into()));
        }
        let mut out = BTreeMap::new();
        for (fs, c) in &self.terms {
            let u = self.slot_word(fs, 0)?.clone();
            let v = self.slot_word(fs, 1)?.clone();
            out.insert((u, v), c.clone());
        }
        Ok(out)
    }

    /// Applies a word-level algebra map slotwise to the first slot,
    /// replacing it; used for counit-style evaluations.
    pub fn map_first_slot_to_scalar<F>(&self, f: F) -> Result<NcPoly, HgError>
    where
        F: Fn(&Word) -> Scalar,
    {
        if self.sig.len() != 2 || self.sig[1] != Slot::P {
            return Err(HgError::BadSlot(
                "expected arity-2 tensor with P second slot".into(),
            ));
        }
        let mut out = NcPoly::zero(&self.pres.table);
        for (fs, c) in &self.terms {
            let u = self.slot_word(fs, 0)?;
            let v = self.slot_word(fs, 1)?;
            let s = f(&u.0);
            out.add_term(v.0.clone(), c.mul(&s));
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MembershipSpace {
    Omega1P,
    BotP,
    Omega1BP,
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (fs, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            if cs != "1" {
                write!(f, "({}) * ", cs)?;
            }
            write!(f, "{}", self.show_pure(fs))?;
        }
        Ok(())
    }
}

/// Parses the `p1 (x) p2 (x) h` text form against an expected signature.
/// Pure tensors are separated by whitespace-delimited `+` / `-`.
pub fn parse_tensor(
    pres: &Arc<Presentation>,
    sig: &[Slot],
    src: &str,
) -> Result<TensorElem, HgError> {
    let mut out = TensorElem::zero(pres, sig.to_vec());
    for (sign, part) in crate::ncpoly::split_terms(src)? {
        let factors: Vec<&str> = part.split("(x)").collect();
        if factors.len() != sig.len() {
            return Err(HgError::Parse(format!(
                "expected {} factors in `{part}`",
                sig.len()
            )));
        }
        let mut fps = vec![];
        for (slot, text) in sig.iter().zip(factors.iter()) {
            let text = text.trim();
            match slot {
                Slot::P => {
                    fps.push(FactorPoly::P(crate::ncpoly::parse_ncpoly(
                        &pres.table,
                        text,
                    )?));
                }
                Slot::H => {
                    let g = parse_group_elem(text)?;
                    fps.push(FactorPoly::H(g));
                }
            }
        }
        out = out.add(&TensorElem::pure(pres, Scalar::from_int(sign), &fps)?);
    }
    Ok(out)
}

fn parse_group_elem(text: &str) -> Result<i64, HgError> {
    match text {
        "e" | "1" => Ok(0),
        "z" | "g" => Ok(1),
        _ => {
            if let Some(rest) = text.strip_prefix("z^") {
                rest.parse::<i64>()
                    .map_err(|_| HgError::Parse(format!("bad group element `{text}`")))
            } else {
                Err(HgError::Parse(format!("bad group element `{text}`")))
            }
        }
    }
}
