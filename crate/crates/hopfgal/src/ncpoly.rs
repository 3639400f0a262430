//! Free-algebra words and noncommutative polynomials over [`Scalar`],
//! graded by an abelian group (`Z` or `Z2`) and optionally carrying an
//! antilinear involution on generators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::HgError;
use crate::scalar::Scalar;

/// The grading group of a presentation: `Z` or `Z/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GradeGroup {
    Int,
    Mod2,
}

impl GradeGroup {
    /// Normalizes a group element (exponent of the group-like generator).
    pub fn norm(&self, g: i64) -> i64 {
        match self {
            GradeGroup::Int => g,
            GradeGroup::Mod2 => g.rem_euclid(2),
        }
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        self.norm(a + b)
    }

    pub fn inv(&self, a: i64) -> i64 {
        self.norm(-a)
    }

    pub fn display(&self, g: i64) -> String {
        match self {
            GradeGroup::Int => match g {
                0 => "e".into(),
                1 => "z".into(),
                n => format!("z^{}", n),
            },
            GradeGroup::Mod2 => {
                if self.norm(g) == 0 {
                    "e".into()
                } else {
                    "g".into()
                }
            }
        }
    }
}

/// One generator: display name, degree, optional star image as a scaled
/// generator `coeff * gen` (the coefficient is `+-1` except where the
/// involution carries a `q`-power, as on the quantum fibration).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInfo {
    pub name: String,
    pub degree: i64,
    pub star: Option<(usize, Scalar)>,
}

/// Ordered generator list with degrees and optional involution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorTable {
    pub gens: Vec<GenInfo>,
    pub group: GradeGroup,
}

impl GeneratorTable {
    pub fn new(group: GradeGroup, gens: Vec<GenInfo>) -> Arc<Self> {
        assert!(gens.len() < 256, "too many generators");
        for (k, g) in gens.iter().enumerate() {
            if let Some((img, coeff)) = &g.star {
                assert!(*img < gens.len());
                assert!(!coeff.is_zero());
                // Involution up to the scalar: star(star(g)) must be g.
                let (back, back_coeff) = gens[*img]
                    .star
                    .as_ref()
                    .expect("star image must itself have a star");
                assert_eq!(*back, k, "star is not an involution on generators");
                assert!(
                    coeff.conj().mul(back_coeff).is_one(),
                    "star coefficients do not square to 1"
                );
                // Star respects degree negation.
                assert_eq!(
                    group.norm(gens[*img].degree),
                    group.inv(g.degree),
                    "star image degree must be the negated degree"
                );
            }
        }
        Arc::new(GeneratorTable { gens, group })
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Result<u8, HgError> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .map(|k| k as u8)
            .ok_or_else(|| HgError::UnknownGenerator(name.to_string()))
    }

    pub fn has_star(&self) -> bool {
        self.gens.iter().all(|g| g.star.is_some())
    }

    pub fn word_degree(&self, w: &[u8]) -> i64 {
        let mut d = 0;
        for &g in w {
            d += self.gens[g as usize].degree;
        }
        self.group.norm(d)
    }
}

/// A word in the free algebra: a sequence of generator indices.
pub type Word = Vec<u8>;

/// Sparse noncommutative polynomial: canonicalized sum of `(word, coeff)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NcPoly {
    pub table: Arc<GeneratorTable>,
    /// Keys ordered by `(length, lexicographic-by-index)`; no zero coefficients.
    pub terms: BTreeMap<WordKey, Scalar>,
}

/// Word key ordered by length first, then lexicographically by raw index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WordKey(pub Word);

impl Ord for WordKey {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for WordKey {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl NcPoly {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        NcPoly {
            table: table.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        NcPoly::monomial(table, Scalar::one(), vec![])
    }

    pub fn monomial(table: &Arc<GeneratorTable>, coeff: Scalar, word: Word) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(WordKey(word), coeff);
        }
        NcPoly {
            table: table.clone(),
            terms,
        }
    }

    pub fn generator(table: &Arc<GeneratorTable>, idx: u8) -> Self {
        NcPoly::monomial(table, Scalar::one(), vec![idx])
    }

    pub fn gen_by_name(table: &Arc<GeneratorTable>, name: &str) -> Result<Self, HgError> {
        Ok(NcPoly::generator(table, table.index_of(name)?))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = WordKey(word);
        let entry = self.terms.entry(key);
        match entry {
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

    pub fn add(&self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.0.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &NcPoly) -> NcPoly {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> NcPoly {
        NcPoly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero(&self.table);
        }
        NcPoly {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a.mul(c)))
                .collect(),
        }
    }

    /// Free-algebra product: concatenation of words, no reduction.
    pub fn multiply(&self, rhs: &NcPoly) -> Result<NcPoly, HgError> {
        if !Arc::ptr_eq(&self.table, &rhs.table) && self.table != rhs.table {
            return Err(HgError::TableMismatch);
        }
        let mut out = NcPoly::zero(&self.table);
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                let mut w = w1.0.clone();
                w.extend_from_slice(&w2.0);
                out.add_term(w, c1.mul(c2));
            }
        }
        Ok(out)
    }

    /// Common degree of all monomials, or `None` when inhomogeneous.
    /// Zero is homogeneous of every degree; it reports degree 0.
    pub fn degree_of(&self) -> Option<i64> {
        let mut deg = None;
        for w in self.terms.keys() {
            let d = self.table.word_degree(&w.0);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Splits into homogeneous components, keyed by normalized degree.
    pub fn homogeneous_components(&self) -> BTreeMap<i64, NcPoly> {
        let mut out: BTreeMap<i64, NcPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            let d = self.table.word_degree(&w.0);
            out.entry(d)
                .or_insert_with(|| NcPoly::zero(&self.table))
                .add_term(w.0.clone(), c.clone());
        }
        out
    }

    /// Antilinear antihomomorphism from the table's star map: reverses words,
    /// maps letters, conjugates coefficients.
    pub fn star(&self) -> Result<NcPoly, HgError> {
        if !self.table.has_star() {
            return Err(HgError::NoStar);
        }
        let mut out = NcPoly::zero(&self.table);
        for (w, c) in &self.terms {
            let mut word = Vec::with_capacity(w.0.len());
            let mut coeff = c.conj();
            for &g in w.0.iter().rev() {
                let (img, s) = self.table.gens[g as usize].star.as_ref().unwrap();
                word.push(*img as u8);
                coeff = coeff.mul(s);
            }
            out.add_term(word, coeff);
        }
        Ok(out)
    }

    pub fn coeff_of(&self, word: &[u8]) -> Scalar {
        self.terms
            .get(&WordKey(word.to_vec()))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of the empty word.
    pub fn constant_term(&self) -> Scalar {
        self.coeff_of(&[])
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = c.to_string();
            if w.0.is_empty() {
                if cs.contains(' ') {
                    write!(f, "({})", cs)?;
                } else {
                    write!(f, "{}", cs)?;
                }
                continue;
            }
            if cs != "1" {
                let needs_parens = cs.contains(' ')
                    || cs.contains('+')
                    || cs.contains('q')
                    || cs.contains('i')
                    || (cs.contains('-') && !cs.starts_with('-'));
                if needs_parens && !cs.starts_with('(') {
                    write!(f, "({}) * ", cs)?;
                } else {
                    write!(f, "{} * ", cs)?;
                }
            }
            let mut lfirst = true;
            for &g in &w.0 {
                if !lfirst {
                    write!(f, "*")?;
                }
                lfirst = false;
                write!(f, "{}", self.table.gens[g as usize].name)?;
            }
        }
        Ok(())
    }
}

/// Parses the monomial-list text form, e.g. `3/2 * a*b*l+ + (1-i)*c`.
///
/// Factors separated by `*`; a factor is a generator name (optionally with
/// `^k`) or a scalar literal. Terms are separated by top-level `+` / `-`.
pub fn parse_ncpoly(table: &Arc<GeneratorTable>, src: &str) -> Result<NcPoly, HgError> {
    let mut out = NcPoly::zero(table);
    for (sign, term) in split_terms(src)? {
        if term.trim().is_empty() {
            return Err(HgError::Parse("empty term".into()));
        }
        let mut acc = NcPoly::monomial(table, Scalar::from_int(sign), vec![]);
        for factor in split_factors(&term) {
            let factor = factor.trim();
            if factor.is_empty() {
                return Err(HgError::Parse(format!("empty factor in `{term}`")));
            }
            let (base, pow) = match factor.rsplit_once('^') {
                Some((b, p)) if table.index_of(b.trim()).is_ok() => {
                    let k: u32 = p.trim().parse().map_err(|_| {
                        HgError::Parse(format!("bad exponent in `{factor}`"))
                    })?;
                    (b.trim().to_string(), k)
                }
                _ => (factor.to_string(), 1),
            };
            if let Ok(idx) = table.index_of(&base) {
                let mut word = vec![];
                for _ in 0..pow {
                    word.push(idx);
                }
                acc = acc.multiply(&NcPoly::monomial(table, Scalar::one(), word))?;
            } else if let Ok(s) = factor.parse::<Scalar>() {
                acc = acc.scale(&s);
            } else if let Some(inner) = factor
                .strip_prefix('(')
                .and_then(|f| f.strip_suffix(')'))
            {
                // Parenthesized polynomial sub-expression.
                acc = acc.multiply(&parse_ncpoly(table, inner)?)?;
            } else {
                return Err(HgError::Parse(format!("cannot parse factor `{factor}`")));
            }
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Splits `a + b - c` at top level into signed terms. Because generator
/// names may end in `+` or `-` (the Grassmann pair), a sign is a term
/// separator only when surrounded by whitespace or at the start of a term.
pub(crate) fn split_terms(src: &str) -> Result<Vec<(i64, String)>, HgError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = vec![];
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut sign = 1i64;
    for (k, &ch) in chars.iter().enumerate() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth
                    .checked_sub(1)
                    .ok_or_else(|| HgError::Parse("unbalanced parens".into()))?;
                cur.push(ch);
            }
            '+' | '-' if depth == 0 && cur.trim().is_empty() => {
                if ch == '-' {
                    sign = -sign;
                }
            }
            '+' | '-'
                if depth == 0
                    && k > 0
                    && chars[k - 1].is_whitespace()
                    && chars.get(k + 1).is_none_or(|c| c.is_whitespace()) =>
            {
                out.push((sign, std::mem::take(&mut cur)));
                sign = if ch == '-' { -1 } else { 1 };
            }
            _ => cur.push(ch),
        }
    }
    if depth != 0 {
        return Err(HgError::Parse("unbalanced parens".into()));
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur));
    }
    Ok(out)
}

fn split_factors(term: &str) -> Vec<String> {
    let mut out = vec![];
    let mut depth = 0usize;
    let mut cur = String::new();
    for ch in term.chars() {
        match ch {
            '(' => {
                depth += 1;
                cur.push(ch);
            }
            ')' => {
                depth = depth.saturating_sub(1);
                cur.push(ch);
            }
            '*' if depth == 0 => out.push(std::mem::take(&mut cur)),
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur);
    }
    out
}
