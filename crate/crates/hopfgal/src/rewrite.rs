//! Finitely presented algebras by confluent rewriting: normal forms, a
//! diamond-lemma critical-pair checker, exact linear algebra over the normal
//! basis, and degree-bounded subspace membership.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use crate::error::HgError;
use crate::ncpoly::{GeneratorTable, NcPoly, Word, WordKey};
use crate::scalar::Scalar;

/// One rewrite rule: leading word -> tail polynomial.
#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: NcPoly,
}

/// A presented algebra with a terminating, grading-homogeneous rule set and a
/// degree-lexicographic monomial order given by a generator precedence.
#[derive(Debug)]
pub struct Presentation {
    pub table: Arc<GeneratorTable>,
    /// `rank[g]` is the position of generator `g` in the precedence.
    pub rank: Vec<u8>,
    pub rules: Vec<Rule>,
    /// Rules indexed by first letter of the leading word.
    by_first: Vec<Vec<usize>>,
    max_lhs_len: usize,
    cache: Mutex<HashMap<Word, Arc<NcPoly>>>,
}

impl Presentation {
    /// Builds and validates a presentation. `precedence` lists generator
    /// names from smallest to largest in the monomial order.
    pub fn new(
        table: Arc<GeneratorTable>,
        precedence: &[&str],
        rules: Vec<Rule>,
    ) -> Result<Arc<Self>, HgError> {
        if precedence.len() != table.len() {
            return Err(HgError::Other(
                "precedence must list every generator exactly once".into(),
            ));
        }
        let mut rank = vec![u8::MAX; table.len()];
        for (pos, name) in precedence.iter().enumerate() {
            let idx = table.index_of(name)? as usize;
            if rank[idx] != u8::MAX {
                return Err(HgError::Other(format!("duplicate generator `{name}` in precedence")));
            }
            rank[idx] = pos as u8;
        }
        let mut by_first = vec![vec![]; table.len()];
        let mut max_lhs_len = 0;
        for (k, rule) in rules.iter().enumerate() {
            if rule.lhs.is_empty() {
                return Err(HgError::Other("empty rule LHS".into()));
            }
            let lhs_deg = table.word_degree(&rule.lhs);
            for w in rule.rhs.terms.keys() {
                if table.word_degree(&w.0) != lhs_deg {
                    return Err(HgError::Other(format!(
                        "rule for `{}` is not grading-homogeneous",
                        word_to_string(&table, &rule.lhs)
                    )));
                }
                if !word_lt(&rank, &w.0, &rule.lhs) {
                    return Err(HgError::Other(format!(
                        "rule tail `{}` not smaller than LHS `{}`",
                        word_to_string(&table, &w.0),
                        word_to_string(&table, &rule.lhs)
                    )));
                }
            }
            by_first[rule.lhs[0] as usize].push(k);
            max_lhs_len = max_lhs_len.max(rule.lhs.len());
        }
        Ok(Arc::new(Presentation {
            table,
            rank,
            rules,
            by_first,
            max_lhs_len,
            cache: Mutex::new(HashMap::new()),
        }))
    }

    /// Leftmost redex: `(position, rule index)`.
    fn find_redex(&self, w: &[u8]) -> Option<(usize, usize)> {
        for p in 0..w.len() {
            for &ri in &self.by_first[w[p] as usize] {
                let lhs = &self.rules[ri].lhs;
                if w.len() - p >= lhs.len() && &w[p..p + lhs.len()] == lhs.as_slice() {
                    return Some((p, ri));
                }
            }
        }
        None
    }

    pub fn nf_word(&self, w: &Word) -> Arc<NcPoly> {
        if let Some(hit) = self.cache.lock().unwrap().get(w) {
            return hit.clone();
        }
        let result = match self.find_redex(w) {
            None => Arc::new(NcPoly::monomial(&self.table, Scalar::one(), w.clone())),
            Some((p, ri)) => {
                let rule = &self.rules[ri];
                let mut acc = NcPoly::zero(&self.table);
                for (tw, tc) in rule.rhs.terms.clone() {
                    let mut next = Vec::with_capacity(w.len() - rule.lhs.len() + tw.0.len());
                    next.extend_from_slice(&w[..p]);
                    next.extend_from_slice(&tw.0);
                    next.extend_from_slice(&w[p + rule.lhs.len()..]);
                    let sub = self.nf_word(&next);
                    for (sw, sc) in &sub.terms {
                        acc.add_term(sw.0.clone(), sc.mul(&tc));
                    }
                }
                Arc::new(acc)
            }
        };
        self.cache
            .lock()
            .unwrap()
            .insert(w.clone(), result.clone());
        result
    }

    /// Irreducible form of `p` under all rules; linear, and multiplicative up
    /// to reduction.
    pub fn normal_form(&self, p: &NcPoly) -> NcPoly {
        let mut acc = NcPoly::zero(&self.table);
        for (w, c) in &p.terms {
            let nf = self.nf_word(&w.0);
            for (sw, sc) in &nf.terms {
                acc.add_term(sw.0.clone(), sc.mul(c));
            }
        }
        acc
    }

    /// Product followed by reduction.
    pub fn mul_nf(&self, p: &NcPoly, q: &NcPoly) -> Result<NcPoly, HgError> {
        Ok(self.normal_form(&p.multiply(q)?))
    }

    pub fn is_normal_word(&self, w: &[u8]) -> bool {
        self.find_redex(w).is_none()
    }

    /// All normal-basis words of exact length `len`.
    pub fn normal_words(&self, len: usize) -> Vec<Word> {
        let mut out = vec![];
        let mut cur: Word = vec![];
        self.normal_words_rec(len, &mut cur, &mut out);
        out
    }

    fn normal_words_rec(&self, len: usize, cur: &mut Word, out: &mut Vec<Word>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for g in 0..self.table.len() as u8 {
            cur.push(g);
            // Only the new suffix can create a redex.
            let start = cur.len().saturating_sub(self.max_lhs_len);
            if self.find_redex(&cur[start..]).is_none() {
                self.normal_words_rec(len, cur, out);
            }
            cur.pop();
        }
    }

    /// Normal words of length `<= maxlen` with the given grading degree.
    pub fn normal_words_of_degree(&self, maxlen: usize, degree: i64) -> Vec<Word> {
        let want = self.table.group.norm(degree);
        let mut out = vec![];
        for len in 0..=maxlen {
            for w in self.normal_words(len) {
                if self.table.word_degree(&w) == want {
                    out.push(w);
                }
            }
        }
        out
    }

    /// Checks joinability of every critical pair whose overlap word has
    /// length at most `degree_bound`.
    pub fn check_confluence(&self, degree_bound: usize) -> ConfluenceReport {
        let mut report = ConfluenceReport {
            pairs_checked: 0,
            failures: vec![],
        };
        for (i, ri) in self.rules.iter().enumerate() {
            for (j, rj) in self.rules.iter().enumerate() {
                // Proper overlaps: a proper suffix of lhs_i equals a proper
                // prefix of lhs_j.
                for k in 1..ri.lhs.len().min(rj.lhs.len()) {
                    if ri.lhs[ri.lhs.len() - k..] == rj.lhs[..k] {
                        let mut w = ri.lhs.clone();
                        w.extend_from_slice(&rj.lhs[k..]);
                        if w.len() <= degree_bound {
                            self.check_pair(i, j, ri.lhs.len() - k, &w, &mut report);
                        }
                    }
                }
                // Inclusions: lhs_j a proper factor of lhs_i.
                if i != j && rj.lhs.len() < ri.lhs.len() {
                    for p in 0..=ri.lhs.len() - rj.lhs.len() {
                        if ri.lhs[p..p + rj.lhs.len()] == rj.lhs[..] && ri.lhs.len() <= degree_bound
                        {
                            let w = ri.lhs.clone();
                            self.check_pair(i, j, p, &w, &mut report);
                        }
                    }
                }
            }
        }
        report
    }

    fn check_pair(
        &self,
        i: usize,
        j: usize,
        pos_j: usize,
        overlap: &Word,
        report: &mut ConfluenceReport,
    ) {
        report.pairs_checked += 1;
        let t1 = self.normal_form(&self.apply_rule_at(overlap, i, 0));
        let t2 = self.normal_form(&self.apply_rule_at(overlap, j, pos_j));
        if t1 != t2 {
            report.failures.push(CriticalPairFailure {
                rule_a: i,
                rule_b: j,
                overlap: word_to_string(&self.table, overlap),
                nf_a: t1.to_string(),
                nf_b: t2.to_string(),
            });
        }
    }

    fn apply_rule_at(&self, w: &Word, rule: usize, pos: usize) -> NcPoly {
        let r = &self.rules[rule];
        debug_assert_eq!(&w[pos..pos + r.lhs.len()], r.lhs.as_slice());
        let mut acc = NcPoly::zero(&self.table);
        for (tw, tc) in &r.rhs.terms {
            let mut next = Vec::with_capacity(w.len());
            next.extend_from_slice(&w[..pos]);
            next.extend_from_slice(&tw.0);
            next.extend_from_slice(&w[pos + r.lhs.len()..]);
            acc.add_term(next, tc.clone());
        }
        acc
    }

    /// Linear independence of normal forms over the scalar field. On a
    /// dependence, returns a vanishing combination (one scalar per input).
    pub fn linear_independent(&self, polys: &[NcPoly]) -> (bool, Option<Vec<Scalar>>) {
        let mut reducer: Vec<(WordKey, BTreeMap<WordKey, Scalar>, Vec<Scalar>)> = vec![];
        for (idx, p) in polys.iter().enumerate() {
            let nf = self.normal_form(p);
            let mut v: BTreeMap<WordKey, Scalar> = nf
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect();
            let mut combo = vec![Scalar::zero(); polys.len()];
            combo[idx] = Scalar::one();
            loop {
                let Some((lead, _)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone()))
                else {
                    // Vanishing combination found.
                    return (false, Some(combo));
                };
                match reducer.iter().find(|(pk, _, _)| *pk == lead) {
                    None => {
                        // Normalize and insert as a new pivot row.
                        let lc = v[&lead].clone();
                        let inv = lc.inv().expect("pivot nonzero");
                        for c in v.values_mut() {
                            *c = c.mul(&inv);
                        }
                        for c in combo.iter_mut() {
                            *c = c.mul(&inv);
                        }
                        reducer.push((lead, v, combo));
                        break;
                    }
                    Some((_, row, rc)) => {
                        let factor = v[&lead].clone();
                        let row = row.clone();
                        let rc = rc.clone();
                        for (k, c) in &row {
                            let cur = v.remove(k).unwrap_or_else(Scalar::zero);
                            let next = cur.sub(&factor.mul(c));
                            if !next.is_zero() {
                                v.insert(k.clone(), next);
                            }
                        }
                        for (t, c) in combo.iter_mut().zip(rc.iter()) {
                            *t = t.sub(&factor.mul(c));
                        }
                    }
                }
            }
        }
        (true, None)
    }

    pub fn word_to_str(&self, w: &[u8]) -> String {
        word_to_string(&self.table, w)
    }
}

/// Degree-lex comparison: `a < b`.
pub fn word_lt(rank: &[u8], a: &[u8], b: &[u8]) -> bool {
    if a.len() != b.len() {
        return a.len() < b.len();
    }
    for (&x, &y) in a.iter().zip(b.iter()) {
        if rank[x as usize] != rank[y as usize] {
            return rank[x as usize] < rank[y as usize];
        }
    }
    false
}

pub fn word_to_string(table: &GeneratorTable, w: &[u8]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    w.iter()
        .map(|&g| table.gens[g as usize].name.clone())
        .collect::<Vec<_>>()
        .join("*")
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub pairs_checked: usize,
    pub failures: Vec<CriticalPairFailure>,
}

impl ConfluenceReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPairFailure {
    pub rule_a: usize,
    pub rule_b: usize,
    pub overlap: String,
    pub nf_a: String,
    pub nf_b: String,
}

// ---------------------------------------------------------------------------
// Sparse row reduction over pairs of normal words, for membership questions
// about subspaces of P (x) P.
// ---------------------------------------------------------------------------

/// Key for a pure tensor in `P (x) P`: the pair of normal words.
pub type PairKey = (WordKey, WordKey);

/// Incremental sparse Gaussian elimination over the scalar field.
#[derive(Default)]
pub struct SpanReducer {
    rows: BTreeMap<PairKey, BTreeMap<PairKey, Scalar>>,
}

impl SpanReducer {
    pub fn new() -> Self {
        SpanReducer {
            rows: BTreeMap::new(),
        }
    }

    /// Reduces `v` against the rows; the residue's leading key has no pivot.
    pub fn residue(&self, mut v: BTreeMap<PairKey, Scalar>) -> BTreeMap<PairKey, Scalar> {
        loop {
            let Some(lead) = v.keys().next().cloned() else {
                return v;
            };
            let Some(row) = self.rows.get(&lead) else {
                return v;
            };
            let factor = v[&lead].clone();
            for (k, c) in row.clone() {
                let cur = v.remove(&k).unwrap_or_else(Scalar::zero);
                let next = cur.sub(&factor.mul(&c));
                if !next.is_zero() {
                    v.insert(k, next);
                }
            }
        }
    }

    /// Adds `v` to the span. Returns `false` when it was already in the span.
    pub fn insert(&mut self, v: BTreeMap<PairKey, Scalar>) -> bool {
        let mut v = self.residue(v);
        let Some(lead) = v.keys().next().cloned() else {
            return false;
        };
        let inv = v[&lead].inv().expect("pivot nonzero");
        for c in v.values_mut() {
            *c = c.mul(&inv);
        }
        self.rows.insert(lead, v);
        true
    }

    pub fn contains(&self, v: BTreeMap<PairKey, Scalar>) -> bool {
        self.residue(v).is_empty()
    }
}

/// Which span of `P (x) P` to test against.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceFamily {
    /// `ker(m: B (x) P -> P) = (Omega^1 B) P`, spanned by `db.p`.
    KerMOverB,
    /// `P (Omega^1 B) P`, spanned by `p.db.p'`.
    PKerMOverBP,
}

/// Decides membership of a homogeneous arity-2 tensor (given as normal-word
/// pairs) in the chosen family, by exact linear algebra over all spanning
/// elements with total word length `<= degree_bound` matching the target's
/// length and grading.
pub fn subspace_membership(
    pres: &Arc<Presentation>,
    tensor: &BTreeMap<PairKey, Scalar>,
    family: SubspaceFamily,
    degree_bound: usize,
) -> Result<bool, HgError> {
    if tensor.is_empty() {
        return Ok(true);
    }
    // The spanning elements are homogeneous in total word length and in the
    // grading; collect the lengths and degrees present in the target.
    let mut lengths = std::collections::BTreeSet::new();
    let mut degrees = std::collections::BTreeSet::new();
    for (l, r) in tensor.keys() {
        lengths.insert(l.0.len() + r.0.len());
        degrees.insert(
            pres.table
                .group
                .mul(pres.table.word_degree(&l.0), pres.table.word_degree(&r.0)),
        );
    }
    let max_len = *lengths.iter().max().unwrap();
    if max_len > degree_bound {
        return Err(HgError::BoundTooSmall(format!(
            "target has word length {max_len}, bound is {degree_bound}"
        )));
    }

    let mut reducer = SpanReducer::new();
    let mut insert_elem = |elem: &[(Word, Word, Scalar)]| {
        let mut v: BTreeMap<PairKey, Scalar> = BTreeMap::new();
        for (lw, rw, c) in elem {
            // Expand into normal-form pairs.
            let ln = pres.nf_word(lw);
            let rn = pres.nf_word(rw);
            for (lk, lc) in &ln.terms {
                for (rk, rc) in &rn.terms {
                    let key = (lk.clone(), rk.clone());
                    let add = c.mul(lc).mul(rc);
                    let cur = v.remove(&key).unwrap_or_else(Scalar::zero);
                    let next = cur.add(&add);
                    if !next.is_zero() {
                        v.insert(key, next);
                    }
                }
            }
        }
        reducer.insert(v);
    };

    for &total in &lengths {
        for &deg in &degrees {
            match family {
                SubspaceFamily::KerMOverB => {
                    // d(b).p = 1 (x) b p - b (x) p over degree-0 monomials b.
                    for blen in 1..=total {
                        let plen = total - blen;
                        for b in pres.normal_words_of_degree_exact(blen, 0) {
                            for p in pres.normal_words(plen) {
                                if pres.table.word_degree(&p) != deg {
                                    continue;
                                }
                                let mut bp = b.clone();
                                bp.extend_from_slice(&p);
                                insert_elem(&[
                                    (vec![], bp, Scalar::one()),
                                    (b.clone(), p, Scalar::from_int(-1)),
                                ]);
                            }
                        }
                    }
                }
                SubspaceFamily::PKerMOverBP => {
                    // p.d(b).p' = p (x) b p' - p b (x) p'.
                    for plen in 0..total {
                        for blen in 1..=total - plen {
                            let qlen = total - plen - blen;
                            for p in pres.normal_words(plen) {
                                let pdeg = pres.table.word_degree(&p);
                                for b in pres.normal_words_of_degree_exact(blen, 0) {
                                    for q in pres.normal_words(qlen) {
                                        let qdeg = pres.table.word_degree(&q);
                                        if pres.table.group.mul(pdeg, qdeg) != deg {
                                            continue;
                                        }
                                        let mut bq = b.clone();
                                        bq.extend_from_slice(&q);
                                        let mut pb = p.clone();
                                        pb.extend_from_slice(&b);
                                        insert_elem(&[
                                            (p.clone(), bq, Scalar::one()),
                                            (pb, q.clone(), Scalar::from_int(-1)),
                                        ]);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(reducer.contains(tensor.clone()))
}

impl Presentation {
    /// Normal words of exact length `len` with the given degree.
    pub fn normal_words_of_degree_exact(&self, len: usize, degree: i64) -> Vec<Word> {
        let want = self.table.group.norm(degree);
        self.normal_words(len)
            .into_iter()
            .filter(|w| self.table.word_degree(w) == want)
            .collect()
    }
}
