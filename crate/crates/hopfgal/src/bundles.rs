//! Line-bundle modules, their projector matrices, hermitian companions,
//! module-isomorphism and freeness certificates, and the auxiliary
//! idempotents on the equator sphere.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;

use crate::connection::SplittingS;
use crate::error::HgError;
use crate::ncpoly::{NcPoly, Word};
use crate::preset::{Preset, PresetKind};
use crate::report::Report;
use crate::scalar::{GaussRat, Scalar};
use crate::tensor::{Factor, MembershipSpace, TensorElem};

// ---------------------------------------------------------------------------
// Matrices over a presented algebra.
// ---------------------------------------------------------------------------

/// Dense matrix of normal-form polynomials.
#[derive(Clone)]
pub struct Mat {
    pub preset: Arc<Preset>,
    pub rows: usize,
    pub cols: usize,
    entries: Vec<NcPoly>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                write!(f, " {} ;", self.at(r, c))?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(preset: &Arc<Preset>, rows: usize, cols: usize) -> Self {
        Mat {
            preset: preset.clone(),
            rows,
            cols,
            entries: vec![NcPoly::zero(&preset.pres.table); rows * cols],
        }
    }

    pub fn identity(preset: &Arc<Preset>, n: usize) -> Self {
        let mut m = Mat::zero(preset, n, n);
        for k in 0..n {
            *m.at_mut(k, k) = NcPoly::one(&preset.pres.table);
        }
        m
    }

    pub fn at(&self, r: usize, c: usize) -> &NcPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut NcPoly {
        &mut self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: NcPoly) {
        self.entries[r * self.cols + c] = self.preset.pres.normal_form(&v);
    }

    /// Column times row.
    pub fn outer(preset: &Arc<Preset>, col: &[NcPoly], row: &[NcPoly]) -> Result<Self, HgError> {
        let mut m = Mat::zero(preset, col.len(), row.len());
        for (r, u) in col.iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                m.set(r, c, preset.pres.mul_nf(u, v)?);
            }
        }
        Ok(m)
    }

    pub fn mul(&self, rhs: &Mat) -> Result<Mat, HgError> {
        if self.cols != rhs.rows {
            return Err(HgError::Other("matrix dimension mismatch".into()));
        }
        let pres = &self.preset.pres;
        let mut out = Mat::zero(&self.preset, self.rows, rhs.cols);
        for r in 0..self.rows {
            for c in 0..rhs.cols {
                let mut acc = NcPoly::zero(&pres.table);
                for k in 0..self.cols {
                    acc = acc.add(&pres.mul_nf(self.at(r, k), rhs.at(k, c))?);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Mat) -> Mat {
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(rhs.entries.iter()) {
            *a = a.add(b);
        }
        out
    }

    pub fn sub(&self, rhs: &Mat) -> Mat {
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(rhs.entries.iter()) {
            *a = a.sub(b);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Conjugate transpose through the star structure.
    pub fn dagger(&self) -> Result<Mat, HgError> {
        let mut out = Mat::zero(&self.preset, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).star()?);
            }
        }
        Ok(out)
    }

    /// Block-diagonal matrix of two square blocks.
    pub fn block_diag(a: &Mat, b: &Mat) -> Mat {
        let n = a.rows + b.rows;
        let m = a.cols + b.cols;
        let mut out = Mat::zero(&a.preset, n, m);
        for r in 0..a.rows {
            for c in 0..a.cols {
                *out.at_mut(r, c) = a.at(r, c).clone();
            }
        }
        for r in 0..b.rows {
            for c in 0..b.cols {
                *out.at_mut(a.rows + r, a.cols + c) = b.at(r, c).clone();
            }
        }
        out
    }

    /// Horizontal concatenation.
    pub fn hcat(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.rows, b.rows);
        let mut out = Mat::zero(&a.preset, a.rows, a.cols + b.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                *out.at_mut(r, c) = a.at(r, c).clone();
            }
            for c in 0..b.cols {
                *out.at_mut(r, a.cols + c) = b.at(r, c).clone();
            }
        }
        out
    }

    /// Vertical concatenation.
    pub fn vcat(a: &Mat, b: &Mat) -> Mat {
        assert_eq!(a.cols, b.cols);
        let mut out = Mat::zero(&a.preset, a.rows + b.rows, a.cols);
        for r in 0..a.rows {
            for c in 0..a.cols {
                *out.at_mut(r, c) = a.at(r, c).clone();
            }
        }
        for r in 0..b.rows {
            for c in 0..a.cols {
                *out.at_mut(a.rows + r, c) = b.at(r, c).clone();
            }
        }
        out
    }

    /// Entrywise map into JSON (serialized polynomials).
    pub fn to_json(&self) -> serde_json::Value {
        let mut rows = vec![];
        for r in 0..self.rows {
            let mut row = vec![];
            for c in 0..self.cols {
                row.push(self.at(r, c).to_string());
            }
            rows.push(row);
        }
        json!({"size": [self.rows, self.cols], "entries": rows})
    }
}

// ---------------------------------------------------------------------------
// Line-bundle modules.
// ---------------------------------------------------------------------------

/// The degree `-mu` homogeneous component of the total space, with its
/// shipped generator list.
pub struct LineBundleModule {
    pub preset: Arc<Preset>,
    pub mu: i64,
    pub gens: Vec<NcPoly>,
}

/// The shipped generators of `A_mu`: the monomial lists of the super sphere
/// (with their Grassmann tails), the PBW monomials on the quantum and
/// classical fibrations, and the parity classes on the equator sphere.
pub fn line_bundle_generators(preset: &Arc<Preset>, mu: i64) -> Result<LineBundleModule, HgError> {
    if mu.abs() > 6 {
        return Err(HgError::Other(format!("|mu| = {} out of shipped range", mu.abs())));
    }
    let table = &preset.pres.table;
    let power = |name: &str, k: u64| -> NcPoly {
        let g = preset.gen(name);
        let mut out = NcPoly::one(table);
        for _ in 0..k {
            out = out.multiply(&g).unwrap();
        }
        out
    };
    let mono2 = |x: &str, i: u64, y: &str, j: u64| -> NcPoly {
        power(x, i).multiply(&power(y, j)).unwrap()
    };
    let n = mu.unsigned_abs();
    let gens: Vec<NcPoly> = match (preset.kind, if mu == 0 { 0i8 } else if mu < 0 { -1 } else { 1 }) {
        (_, 0) => vec![NcPoly::one(table)],
        (PresetKind::SuperS3, -1) => {
            let mut v: Vec<NcPoly> = (0..=n).map(|k| mono2("a", n - k, "c", k)).collect();
            v.extend(
                (0..n).map(|k| {
                    mono2("a", n - 1 - k, "c", k)
                        .multiply(&preset.gen("l+"))
                        .unwrap()
                }),
            );
            v
        }
        (PresetKind::SuperS3, 1) => {
            let mut v: Vec<NcPoly> = (0..=n).map(|k| mono2("d", n - k, "b", k)).collect();
            v.extend(
                (0..n).map(|k| {
                    mono2("d", n - 1 - k, "b", k)
                        .multiply(&preset.gen("l-"))
                        .unwrap()
                }),
            );
            v
        }
        (PresetKind::ClassicalSl2, -1) => (0..=n).map(|k| mono2("a", n - k, "c", k)).collect(),
        (PresetKind::ClassicalSl2, 1) => (0..=n).map(|k| mono2("d", n - k, "b", k)).collect(),
        (PresetKind::Slq2, -1) => (0..=n).map(|k| mono2("alpha", n - k, "gamma", k)).collect(),
        (PresetKind::Slq2, 1) => (0..=n).map(|k| mono2("delta", n - k, "beta", k)).collect(),
        (PresetKind::PodlesEq, _) => vec![preset.gen("x"), preset.gen("y"), preset.gen("z")],
        _ => return Err(HgError::UnsupportedPreset(preset.name.clone())),
    };
    // Every generator must be homogeneous of degree -mu and the list must be
    // linearly independent (the PBW-basis lemma).
    let want = table.group.inv(table.group.norm(mu));
    for g in &gens {
        let nf = preset.pres.normal_form(g);
        if nf.degree_of() != Some(want) {
            return Err(HgError::Other(format!(
                "generator {} has wrong degree for mu = {mu}",
                g
            )));
        }
    }
    let (indep, _) = preset.pres.linear_independent(&gens);
    if !indep {
        return Err(HgError::Other("generators are linearly dependent".into()));
    }
    Ok(LineBundleModule {
        preset: preset.clone(),
        mu,
        gens,
    })
}

// ---------------------------------------------------------------------------
// Projector certificates.
// ---------------------------------------------------------------------------

/// Projector matrix with optional rank-one factorization data and hermitian
/// companion.
pub struct ProjectorCert {
    pub preset: Arc<Preset>,
    pub mu: i64,
    pub gens: Vec<NcPoly>,
    pub e: Mat,
    /// Column / row factors with `q^T p = 1` when the splitting is rank-one.
    pub p_col: Option<Vec<NcPoly>>,
    pub q_col: Option<Vec<NcPoly>>,
}

/// Builds the projector of a line-bundle module from the splitting by
/// expanding `s(g_k)` over the generator list.
///
/// An optional completion table `c_table` maps extra right-factor monomials
/// to their expansions over the generators; the shipped modules need none.
pub fn projector_from_splitting(
    s: &SplittingS,
    module: &LineBundleModule,
    c_table: Option<&BTreeMap<Word, Vec<NcPoly>>>,
) -> Result<ProjectorCert, HgError> {
    let preset = &module.preset;
    let pres = &preset.pres;
    let n = module.gens.len();

    // Normal form of each generator must be a single monomial so right
    // factors can be matched syntactically.
    let mut lookup: BTreeMap<Word, (usize, Scalar)> = BTreeMap::new();
    for (l, g) in module.gens.iter().enumerate() {
        let nf = pres.normal_form(g);
        if nf.terms.len() != 1 {
            return Err(HgError::Other(format!(
                "generator {} is not a monomial after reduction",
                g
            )));
        }
        let (w, c) = nf.terms.iter().next().unwrap();
        lookup.insert(w.0.clone(), (l, c.clone()));
    }

    let mut e = Mat::zero(preset, n, n);
    for (k, g) in module.gens.iter().enumerate() {
        let t = s.eval(g)?;
        for (fs, coeff) in &t.terms {
            let (Factor::Mono(u), Factor::Mono(v)) = (&fs[0], &fs[1]) else {
                return Err(HgError::BadSlot("expected P (x) P".into()));
            };
            if let Some((l, cl)) = lookup.get(&v.0) {
                let scale = coeff.div(cl)?;
                let add = NcPoly::monomial(&pres.table, scale, u.0.clone());
                let cur = e.at(k, *l).clone();
                *e.at_mut(k, *l) = cur.add(&add);
            } else if let Some(table) = c_table {
                let Some(expansion) = table.get(&v.0) else {
                    return Err(HgError::ExpansionFailure(pres.word_to_str(&v.0)));
                };
                for (l, part) in expansion.iter().enumerate() {
                    let add = pres.mul_nf(
                        &NcPoly::monomial(&pres.table, coeff.clone(), u.0.clone()),
                        part,
                    )?;
                    let cur = e.at(k, l).clone();
                    *e.at_mut(k, l) = cur.add(&add);
                }
            } else {
                return Err(HgError::ExpansionFailure(pres.word_to_str(&v.0)));
            }
        }
    }

    // Rank-one factorization for the shipped fibrations.
    let (p_col, q_col) = rank_one_factors(preset, module.mu)?;

    Ok(ProjectorCert {
        preset: preset.clone(),
        mu: module.mu,
        gens: module.gens.clone(),
        e,
        p_col,
        q_col,
    })
}

/// Optional rank-one column/row pair.
type RankOneFactors = (Option<Vec<NcPoly>>, Option<Vec<NcPoly>>);

/// Closed-form rank-one column/row pair with `q^T p = 1`, where available.
fn rank_one_factors(preset: &Arc<Preset>, mu: i64) -> Result<RankOneFactors, HgError> {
    if mu == 0 {
        return Ok((
            Some(vec![NcPoly::one(&preset.pres.table)]),
            Some(vec![NcPoly::one(&preset.pres.table)]),
        ));
    }
    let n = mu.unsigned_abs();
    let power = |name: &str, k: u64| -> NcPoly {
        let g = preset.gen(name);
        let mut out = NcPoly::one(&preset.pres.table);
        for _ in 0..k {
            out = out.multiply(&g).unwrap();
        }
        out
    };
    match preset.kind {
        PresetKind::SuperS3 | PresetKind::ClassicalSl2 => {
            let with_grassmann = preset.kind == PresetKind::SuperS3;
            let (phi, plo, qhi, qlo) = if mu < 0 {
                ("a", "c", "d", "b")
            } else {
                ("d", "b", "a", "c")
            };
            let prefactor = if with_grassmann {
                NcPoly::one(&preset.pres.table).add(
                    &preset
                        .gen("l+")
                        .multiply(&preset.gen("l-"))
                        .unwrap()
                        .scale(&Scalar::from_int(n as i64)),
                )
            } else {
                NcPoly::one(&preset.pres.table)
            };
            let mut p = vec![];
            let mut q = vec![];
            for k in 0..=n {
                let m = power(phi, n - k).multiply(&power(plo, k)).unwrap();
                p.push(prefactor.multiply(&m).unwrap());
                let sign = if k % 2 == 0 {
                    Scalar::one()
                } else {
                    Scalar::from_int(-1)
                };
                let qm = power(qhi, n - k).multiply(&power(qlo, k)).unwrap();
                q.push(qm.scale(&Scalar::binomial(n, k).mul(&sign)));
            }
            if with_grassmann {
                let tail = if mu < 0 { "l+" } else { "l-" };
                for k in 0..n {
                    let m = power(phi, n - 1 - k)
                        .multiply(&power(plo, k))
                        .unwrap()
                        .multiply(&preset.gen(tail))
                        .unwrap();
                    p.push(m);
                    q.push(NcPoly::zero(&preset.pres.table));
                }
            }
            Ok((Some(p), Some(q)))
        }
        PresetKind::Slq2 => {
            // p = generator monomials; q from (S (x) id) Delta(rep).
            let hopf = preset
                .hopf
                .as_ref()
                .ok_or_else(|| HgError::MissingHopf(preset.name.clone()))?;
            let pres = &preset.pres;
            // The module of charge mu sits in degree -mu, so the splitting
            // pairs it with the group-like z^-mu.
            let rep = crate::connection::slq2_representative(preset, -mu)?;
            let module = line_bundle_generators(preset, mu)?;
            let delta = hopf.delta_of(pres, &rep)?;
            let sd = hopf.apply_antipode_first(pres, &delta)?;
            // Group the first legs by the right monomial, matching generators.
            let mut lookup: BTreeMap<Word, (usize, Scalar)> = BTreeMap::new();
            for (l, g) in module.gens.iter().enumerate() {
                let nf = pres.normal_form(g);
                let (w, c) = nf.terms.iter().next().unwrap();
                lookup.insert(w.0.clone(), (l, c.clone()));
            }
            let mut q = vec![NcPoly::zero(&pres.table); module.gens.len()];
            for (fs, coeff) in &sd.terms {
                let (Factor::Mono(u), Factor::Mono(v)) = (&fs[0], &fs[1]) else {
                    continue;
                };
                let Some((l, cl)) = lookup.get(&v.0) else {
                    return Err(HgError::ExpansionFailure(pres.word_to_str(&v.0)));
                };
                q[*l] = q[*l].add(&NcPoly::monomial(
                    &pres.table,
                    coeff.div(cl)?,
                    u.0.clone(),
                ));
            }
            Ok((Some(module.gens), Some(q)))
        }
        _ => Ok((None, None)),
    }
}

/// Verifies `E^2 = E`, `sum_l E_kl g_l = g_k`, degree-0 entries, and (when
/// present) the rank-one factorization `q^T p = 1`, `E = p q^T`.
pub fn projector_report(cert: &ProjectorCert) -> Result<Report, HgError> {
    let preset = &cert.preset;
    let pres = &preset.pres;
    let mut report = Report::new("projector", &preset.name, json!({"mu": cert.mu}));
    let e2 = cert.e.mul(&cert.e)?;
    report.record(
        "E^2 = E",
        json!({"mu": cert.mu, "size": cert.e.rows}),
        e2 == cert.e,
        None,
    );
    for (k, g) in cert.gens.iter().enumerate() {
        let mut acc = NcPoly::zero(&pres.table);
        for (l, h) in cert.gens.iter().enumerate() {
            acc = acc.add(&pres.mul_nf(cert.e.at(k, l), h)?);
        }
        let ok = acc == pres.normal_form(g);
        report.record(
            "sum_l E_kl g_l = g_k",
            json!({"mu": cert.mu, "k": k}),
            ok,
            None,
        );
    }
    let mut deg_ok = true;
    for r in 0..cert.e.rows {
        for c in 0..cert.e.cols {
            let entry = cert.e.at(r, c);
            if !entry.is_zero() && entry.degree_of() != Some(0) {
                deg_ok = false;
            }
        }
    }
    report.record("entries coinvariant", json!({"mu": cert.mu}), deg_ok, None);
    if let (Some(p), Some(q)) = (&cert.p_col, &cert.q_col) {
        let mut qtp = NcPoly::zero(&pres.table);
        for (u, v) in q.iter().zip(p.iter()) {
            qtp = qtp.add(&pres.mul_nf(u, v)?);
        }
        report.record(
            "q^T p = 1",
            json!({"mu": cert.mu}),
            qtp == NcPoly::one(&pres.table),
            None,
        );
        let outer = Mat::outer(preset, p, q)?;
        report.record(
            "E = p q^T",
            json!({"mu": cert.mu}),
            outer == cert.e,
            None,
        );
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Hermitian companions.
// ---------------------------------------------------------------------------

/// Hermitian frame data: a column `u` with `u^dagger u = 1` and
/// `F = u u^dagger`.
pub struct HermitianCert {
    pub preset: Arc<Preset>,
    pub mu: i64,
    pub u: Vec<NcPoly>,
    pub f: Mat,
}

fn two_square(c: u64) -> Option<(i64, i64)> {
    let mut x = (c as f64).sqrt().round() as i64;
    while x >= 0 && (x * x) as u64 > c {
        x -= 1;
    }
    while x >= 0 && 2 * (x * x) as u64 >= c {
        let rest = c - (x * x) as u64;
        let y = (rest as f64).sqrt().round() as i64;
        if y >= 0 && (y * y) as u64 == rest {
            return Some((x, y));
        }
        x -= 1;
    }
    None
}

fn four_square(c: u64) -> (i64, i64, i64, i64) {
    let bound = (c as f64).sqrt() as i64 + 1;
    for w in 0..=bound {
        for x in w..=bound {
            let partial = (w * w + x * x) as u64;
            if partial > c {
                break;
            }
            if let Some((y, z)) = two_square(c - partial) {
                return (w, x, y, z);
            }
        }
    }
    unreachable!("every nonnegative integer is a sum of four squares")
}

/// Builds the hermitian frame for the charge-`mu` module. The binomial
/// square roots of the displayed rows are replaced by Gaussian-integer
/// weights of the same norm; binomials that are not a sum of two squares are
/// handled by pairing equal weights through a quaternion-norm 2x2 block, or
/// by splitting one row into two. Scalars never leave `Q(i)(q)`; only the
/// frame length can exceed the displayed `2n+1` (first at `n = 4`).
pub fn hermitian_projector(preset: &Arc<Preset>, mu: i64) -> Result<HermitianCert, HgError> {
    if mu == 0 {
        let one = NcPoly::one(&preset.pres.table);
        return Ok(HermitianCert {
            preset: preset.clone(),
            mu,
            u: vec![one.clone()],
            f: Mat::identity(preset, 1),
        });
    }
    let n = mu.unsigned_abs();
    let pres = &preset.pres;
    let power = |name: &str, k: u64| -> NcPoly {
        let g = preset.gen(name);
        let mut out = NcPoly::one(&pres.table);
        for _ in 0..k {
            out = out.multiply(&g).unwrap();
        }
        out
    };

    // Weighted base vectors (multiplier, element).
    let mut items: Vec<(u64, NcPoly)> = vec![];
    match preset.kind {
        PresetKind::SuperS3 => {
            // Prefactor (1 + (n -+ 1)/2 l+l-): rows of the -n frame carry
            // (n-1)/2, rows of the +n frame (n+1)/2.
            let half_coeff = if mu < 0 {
                Scalar::from_ratio(n as i64 - 1, 2)
            } else {
                Scalar::from_ratio(n as i64 + 1, 2)
            };
            let grassmann = preset
                .gen("l+")
                .multiply(&preset.gen("l-"))
                .unwrap()
                .scale(&half_coeff);
            let w = NcPoly::one(&pres.table).add(&grassmann);
            let (hi, lo, tail) = if mu < 0 {
                ("a", "c", "l+")
            } else {
                ("d", "b", "l-")
            };
            for k in 0..=n {
                let m = power(hi, n - k).multiply(&power(lo, k)).unwrap();
                items.push((binom(n, k), pres.mul_nf(&w, &m)?));
            }
            for k in 0..n {
                let m = power(hi, n - 1 - k)
                    .multiply(&power(lo, k))
                    .unwrap()
                    .multiply(&preset.gen(tail))
                    .unwrap();
                items.push((binom(n - 1, k), pres.normal_form(&m)));
            }
        }
        PresetKind::ClassicalSl2 => {
            let (hi, lo) = if mu < 0 { ("a", "c") } else { ("d", "b") };
            for k in 0..=n {
                let m = power(hi, n - k).multiply(&power(lo, k)).unwrap();
                items.push((binom(n, k), pres.normal_form(&m)));
            }
        }
        PresetKind::Slq2 => {
            if n != 1 {
                return Err(HgError::Other(
                    "quantum hermitian frames are shipped for |mu| = 1 only".into(),
                ));
            }
            let (g1, g2) = if mu < 0 {
                ("alpha", "gamma")
            } else {
                ("delta", "beta")
            };
            items.push((1, preset.gen(g1)));
            items.push((1, preset.gen(g2)));
        }
        _ => return Err(HgError::UnsupportedPreset(preset.name.clone())),
    }

    let u = assemble_frame(preset, &items)?;

    // u^dagger u = 1.
    let mut utu = NcPoly::zero(&pres.table);
    for e in &u {
        utu = utu.add(&pres.mul_nf(&e.star()?, e)?);
    }
    if utu != NcPoly::one(&pres.table) {
        return Err(HgError::Other(format!(
            "frame normalization failed for mu = {mu}: u^dagger u = {utu}"
        )));
    }
    let udag: Vec<NcPoly> = u
        .iter()
        .map(|e| e.star())
        .collect::<Result<Vec<_>, _>>()?;
    let f = Mat::outer(preset, &u, &udag)?;
    Ok(HermitianCert {
        preset: preset.clone(),
        mu,
        u,
        f,
    })
}

fn binom(n: u64, k: u64) -> u64 {
    let mut acc = 1u64;
    for j in 0..k.min(n - k) {
        acc = acc * (n - j) / (j + 1);
    }
    acc
}

/// Replaces multipliers by Gaussian weights: a multiplier that is a sum of
/// two squares becomes one weighted row; equal non-norm multipliers are
/// paired (wherever they sit) through a 2x2 Gaussian block with the
/// quaternion norm form; a leftover non-norm multiplier splits into two
/// rows. Only the split case grows the frame beyond the displayed length.
fn assemble_frame(
    preset: &Arc<Preset>,
    items: &[(u64, NcPoly)],
) -> Result<Vec<NcPoly>, HgError> {
    let gauss = |x: i64, y: i64| -> Scalar {
        Scalar::from_gauss(GaussRat::new(
            num::BigRational::from_integer(num::BigInt::from(x)),
            num::BigRational::from_integer(num::BigInt::from(y)),
        ))
    };
    let mut rows: Vec<NcPoly> = vec![];
    let mut pending: BTreeMap<u64, NcPoly> = BTreeMap::new();
    for (c, m) in items {
        if let Some((x, y)) = two_square(*c) {
            rows.push(m.scale(&gauss(x, y)));
            continue;
        }
        match pending.remove(c) {
            None => {
                pending.insert(*c, m.clone());
            }
            Some(m0) => {
                // Quaternion block: G^dagger G = diag(c, c) with Gaussian G.
                let (w, x, y, z) = four_square(*c);
                rows.push(m0.scale(&gauss(w, x)).add(&m.scale(&gauss(y, z))));
                rows.push(m0.scale(&gauss(-y, z)).add(&m.scale(&gauss(w, -x))));
            }
        }
    }
    for (c, m) in pending {
        split_rows(&mut rows, &gauss, c, &m);
    }
    let _ = preset;
    Ok(rows)
}

fn split_rows(
    rows: &mut Vec<NcPoly>,
    gauss: &dyn Fn(i64, i64) -> Scalar,
    c: u64,
    m: &NcPoly,
) {
    // c = n1 + n2 with both parts sums of two squares.
    for n1 in 1..c {
        if let (Some((x1, y1)), Some((x2, y2))) = (two_square(n1), two_square(c - n1)) {
            rows.push(m.scale(&gauss(x1, y1)));
            rows.push(m.scale(&gauss(x2, y2)));
            return;
        }
    }
    unreachable!("two-norm split exists for every integer >= 2");
}

/// Verifies `u^dagger u = 1`, `F = F^dagger`, `F^2 = F`.
pub fn hermitian_report(cert: &HermitianCert) -> Result<Report, HgError> {
    let preset = &cert.preset;
    let pres = &preset.pres;
    let mut report = Report::new(
        "hermitian-projector",
        &preset.name,
        json!({"mu": cert.mu, "rows": cert.u.len()}),
    );
    let mut utu = NcPoly::zero(&pres.table);
    for e in &cert.u {
        utu = utu.add(&pres.mul_nf(&e.star()?, e)?);
    }
    report.record(
        "u^dagger u = 1",
        json!({"mu": cert.mu}),
        utu == NcPoly::one(&pres.table),
        None,
    );
    let fd = cert.f.dagger()?;
    report.record("F hermitian", json!({"mu": cert.mu}), fd == cert.f, None);
    let f2 = cert.f.mul(&cert.f)?;
    report.record("F idempotent", json!({"mu": cert.mu}), f2 == cert.f, None);
    Ok(report)
}

// ---------------------------------------------------------------------------
// Isomorphism and freeness certificates.
// ---------------------------------------------------------------------------

/// Checks the four intertwining identities
/// `ELF = LF`, `F L~ E = L~ E`, `E L L~ = E`, `F L~ L = F`.
pub fn verify_module_iso(e: &Mat, f: &Mat, l: &Mat, ltilde: &Mat) -> Result<Report, HgError> {
    let preset = &e.preset;
    let mut report = Report::new("module-iso", &preset.name, json!({}));
    if e.cols != l.rows || l.cols != f.rows || ltilde.rows != f.cols || ltilde.cols != e.rows {
        return Err(HgError::Other("iso witness dimensions mismatch".into()));
    }
    let lf = l.mul(f)?;
    report.record("ELF = LF", json!({}), e.mul(&lf)? == lf, None);
    let lte = ltilde.mul(e)?;
    report.record("F L~ E = L~ E", json!({}), f.mul(&lte)? == lte, None);
    let llt = l.mul(ltilde)?;
    report.record("E L L~ = E", json!({}), e.mul(&llt)? == *e, None);
    let ltl = ltilde.mul(l)?;
    report.record("F L~ L = F", json!({}), f.mul(&ltl)? == *f, None);
    Ok(report)
}

/// Builds the derived witnesses `L = p u^dagger`, `L~ = u q^T` relating a
/// rank-one projector to its hermitian companion, and verifies the four
/// intertwining identities plus the two product identities `L L~ = E` and
/// `L~ L = F` these witnesses satisfy.
pub fn iso_certificate(
    cert: &ProjectorCert,
    herm: &HermitianCert,
) -> Result<Report, HgError> {
    let preset = &cert.preset;
    let p = cert
        .p_col
        .as_ref()
        .ok_or_else(|| HgError::Other("no rank-one column data".into()))?;
    let q = cert
        .q_col
        .as_ref()
        .ok_or_else(|| HgError::Other("no rank-one row data".into()))?;
    let udag: Vec<NcPoly> = herm
        .u
        .iter()
        .map(|e| e.star())
        .collect::<Result<Vec<_>, _>>()?;
    let l = Mat::outer(preset, p, &udag)?;
    let ltilde = Mat::outer(preset, &herm.u, q)?;
    let mut report = verify_module_iso(&cert.e, &herm.f, &l, &ltilde)?;
    let llt = l.mul(&ltilde)?;
    report.record(
        "L L~ = E",
        json!({"mu": cert.mu}),
        llt == cert.e,
        None,
    );
    let ltl = ltilde.mul(&l)?;
    report.record(
        "L~ L = F",
        json!({"mu": cert.mu}),
        ltl == herm.f,
        None,
    );
    Ok(report)
}

/// The rank-two freeness certificate: `A_-1 (+) A_1` is free, witnessed by
/// explicit blocks against `E = I_2` and `F = diag(F_-1, M F_1 M)`.
pub fn freeness_certificate(preset: &Arc<Preset>) -> Result<Report, HgError> {
    let mut report = Report::new("freeness", &preset.name, json!({}));
    match preset.kind {
        PresetKind::SuperS3 => {
            let g = |s: &str| preset.gen(s);
            let lam = |k: i64| {
                NcPoly::one(&preset.pres.table).add(
                    &g("l+").multiply(&g("l-")).unwrap().scale(&Scalar::from_int(k)),
                )
            };
            let fminus = Mat::outer(
                preset,
                &[g("a"), g("c"), g("l+")],
                &[g("d"), g("b").neg(), g("l-").neg()],
            )?;
            let ftilde = Mat::outer(
                preset,
                &[
                    preset.pres.mul_nf(&lam(2), &g("b"))?,
                    preset.pres.mul_nf(&lam(2), &g("d"))?,
                    g("l-"),
                ],
                &[g("c").neg(), g("a"), g("l+").neg()],
            )?;
            let f = Mat::block_diag(&fminus, &ftilde);
            let e = Mat::identity(preset, 2);
            // L~ = [f-; f+] with the closed-form u/v blocks.
            let f_lower = Mat::outer(preset, &[g("a"), g("c"), g("l+")], &[g("d"), g("b").neg()])?;
            let f_upper = Mat::outer(preset, &[g("b"), g("d"), g("l-")], &[g("c").neg(), g("a")])?;
            let ltilde = Mat::vcat(&f_lower, &f_upper);
            // L = [g-  g+] with the x/y blocks.
            let x_minus = preset.pres.mul_nf(&lam(1), &g("a"))?;
            let y_minus = preset.pres.mul_nf(&lam(1), &g("c"))?;
            let x_plus = preset.pres.mul_nf(&lam(3), &g("b"))?;
            let y_plus = preset.pres.mul_nf(&lam(3), &g("d"))?;
            let g_minus = Mat::outer(
                preset,
                &[x_minus, y_minus],
                &[g("d"), g("b").neg(), g("l-").neg()],
            )?;
            let g_plus = Mat::outer(
                preset,
                &[x_plus, y_plus],
                &[g("c").neg(), g("a"), g("l+").neg()],
            )?;
            let l = Mat::hcat(&g_minus, &g_plus);
            report.merge(verify_module_iso(&e, &f, &l, &ltilde)?);
            // The two blocks annihilate each other after the swap.
            let prod = fminus.mul(&ftilde)?;
            report.record("F_-1 F~_1 = 0", json!({}), prod.is_zero(), None);
            let prod = ftilde.mul(&fminus)?;
            report.record("F~_1 F_-1 = 0", json!({}), prod.is_zero(), None);
        }
        PresetKind::Slq2 => {
            let q = Scalar::q_pow(1);
            let qi = Scalar::q_pow(-1);
            let g = |s: &str| preset.gen(s);
            let fminus = Mat::outer(
                preset,
                &[g("alpha"), g("gamma")],
                &[g("delta"), g("beta").scale(&q).neg()],
            )?;
            let ftilde = Mat::outer(
                preset,
                &[g("beta"), g("delta")],
                &[g("gamma").scale(&qi).neg(), g("alpha")],
            )?;
            let f = Mat::block_diag(&fminus, &ftilde);
            let e = Mat::identity(preset, 2);
            let ltilde = Mat::vcat(&fminus, &ftilde);
            let l = Mat::hcat(&fminus, &ftilde);
            report.merge(verify_module_iso(&e, &f, &l, &ltilde)?);
            let prod = fminus.mul(&ftilde)?;
            report.record("F_-1 F~_1 = 0", json!({}), prod.is_zero(), None);
        }
        PresetKind::ClassicalSl2 => {
            let g = |s: &str| preset.gen(s);
            let fminus = Mat::outer(preset, &[g("a"), g("c")], &[g("d"), g("b").neg()])?;
            let ftilde = Mat::outer(preset, &[g("b"), g("d")], &[g("c").neg(), g("a")])?;
            let f = Mat::block_diag(&fminus, &ftilde);
            let e = Mat::identity(preset, 2);
            let ltilde = Mat::vcat(&fminus, &ftilde);
            let l = Mat::hcat(&fminus, &ftilde);
            report.merge(verify_module_iso(&e, &f, &l, &ltilde)?);
        }
        _ => {
            return Err(HgError::UnsupportedPreset(preset.name.clone()));
        }
    }
    Ok(report)
}

// ---------------------------------------------------------------------------
// Equator-sphere extras.
// ---------------------------------------------------------------------------

/// Idempotents of the normal and tangent bundles on the equator sphere.
pub fn auxiliary_idempotents(preset: &Arc<Preset>) -> Result<Report, HgError> {
    if preset.kind != PresetKind::PodlesEq {
        return Err(HgError::UnsupportedPreset(preset.name.clone()));
    }
    let pres = &preset.pres;
    let mut report = Report::new("tangent-idempotents", &preset.name, json!({}));
    let v = [preset.gen("x"), preset.gen("y"), preset.gen("z")];
    let f = Mat::outer(preset, &v, &v)?;
    let f2 = f.mul(&f)?;
    report.record("F^2 = F", json!({}), f2 == f, None);
    let i3 = Mat::identity(preset, 3);
    let g = i3.sub(&f);
    let g2 = g.mul(&g)?;
    report.record("(I - F)^2 = I - F", json!({}), g2 == g, None);
    let mut trace = NcPoly::zero(&pres.table);
    for k in 0..3 {
        trace = trace.add(f.at(k, k));
    }
    report.record(
        "tr F = 1",
        json!({}),
        trace == NcPoly::one(&pres.table),
        None,
    );
    Ok(report)
}

/// Positive and negative strongness witnesses on the equator sphere: the
/// standard splitting lands in `B (x) P`, the perturbed one does not, and
/// the obstruction survives the `q -> 1` specialization.
pub fn nonstrong_witness(preset: &Arc<Preset>) -> Result<Report, HgError> {
    if preset.kind != PresetKind::PodlesEq {
        return Err(HgError::UnsupportedPreset(preset.name.clone()));
    }
    let pres = &preset.pres;
    let mut report = Report::new("nonstrong-witness", &preset.name, json!({}));
    let omega = crate::connection::ConnForm::standard(preset)?;
    let s = crate::connection::j4(&omega);
    let x = preset.gen("x");
    let sx = s.eval(&x)?;
    report.record(
        "s(x) in B (x) P",
        json!({}),
        sx.membership(MembershipSpace::BotP)?,
        None,
    );
    // s~(x) = s(x) - 2 x d(x^2).
    let x2 = pres.mul_nf(&x, &x)?;
    let correction = TensorElem::d_universal(pres, &x2)
        .act_left(&x)?
        .scale(&Scalar::from_int(2));
    let sxt = sx.sub(&correction);
    let in_bot = sxt.membership(MembershipSpace::BotP)?;
    report.record(
        "s~(x) not in B (x) P",
        json!({}),
        !in_bot,
        sxt.odd_left_witness(),
    );
    // The odd-degree component survives at q = 1.
    let mut survives = false;
    for (fs, c) in &sxt.terms {
        if let Factor::Mono(w) = &fs[0] {
            if pres.table.word_degree(&w.0) != 0 {
                if let Ok(v) = c.specialize_q1() {
                    if !v.is_zero() {
                        survives = true;
                    }
                } else {
                    survives = true;
                }
            }
        }
    }
    report.record("failure persists at q = 1", json!({}), survives, None);
    Ok(report)
}
