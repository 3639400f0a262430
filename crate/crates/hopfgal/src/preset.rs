//! Shipped presentations: the super 3-sphere, the quantum fibration
//! coordinate ring, the equator Podles sphere, and the classical body.
//! Also the structured-text preset file format used by the CLI.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::HgError;
use crate::hopf::HopfStructure;
use crate::ncpoly::{parse_ncpoly, GenInfo, GeneratorTable, GradeGroup, NcPoly, WordKey};
use crate::rewrite::{Presentation, Rule};
use crate::scalar::Scalar;
use crate::tensor::{parse_tensor, Slot};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetKind {
    SuperS3,
    Slq2,
    PodlesEq,
    ClassicalSl2,
    User,
}

/// A named presentation plus its Hopf metadata.
pub struct Preset {
    pub name: String,
    pub kind: PresetKind,
    pub pres: Arc<Presentation>,
    pub hopf: Option<Arc<HopfStructure>>,
    /// Images of generators under the quotient map onto the group algebra
    /// (principal homogeneous presets only).
    pub pi_images: Option<Vec<Option<i64>>>,
    /// Shipped generator list of the coinvariant subalgebra.
    pub coinvariant_gens: Vec<NcPoly>,
}

impl Preset {
    pub fn group(&self) -> GradeGroup {
        self.pres.table.group
    }

    /// Group elements `g^k` for `1 <= k <= range`, both signs for `Z`; the
    /// single nontrivial class for `Z/2`.
    pub fn group_range(&self, range: i64) -> Vec<i64> {
        match self.group() {
            GradeGroup::Int => {
                let mut v = vec![];
                for k in 1..=range.max(1) {
                    v.push(k);
                    v.push(-k);
                }
                v
            }
            GradeGroup::Mod2 => vec![1],
        }
    }

    pub fn generators(&self) -> Vec<NcPoly> {
        (0..self.pres.table.len() as u8)
            .map(|g| NcPoly::generator(&self.pres.table, g))
            .collect()
    }

    pub fn gen(&self, name: &str) -> NcPoly {
        NcPoly::gen_by_name(&self.pres.table, name).expect("generator name")
    }
}

fn word_rule(table: &Arc<GeneratorTable>, lhs: &[&str], rhs: NcPoly) -> Rule {
    let lhs = lhs
        .iter()
        .map(|n| table.index_of(n).unwrap())
        .collect::<Vec<_>>();
    Rule { lhs, rhs }
}

/// Commutation rules sending every out-of-order pair to its sorted form,
/// with a sign for anticommuting pairs.
fn sorting_rules(
    table: &Arc<GeneratorTable>,
    precedence: &[&str],
    anticommuting: &[(&str, &str)],
) -> Vec<Rule> {
    let idx: Vec<u8> = precedence
        .iter()
        .map(|n| table.index_of(n).unwrap())
        .collect();
    let anti: Vec<(u8, u8)> = anticommuting
        .iter()
        .map(|(a, b)| (table.index_of(a).unwrap(), table.index_of(b).unwrap()))
        .collect();
    let mut rules = vec![];
    for i in 0..idx.len() {
        for j in 0..i {
            let (hi, lo) = (idx[i], idx[j]);
            let sign = if anti
                .iter()
                .any(|&(a, b)| (a, b) == (hi, lo) || (a, b) == (lo, hi))
            {
                Scalar::from_int(-1)
            } else {
                Scalar::one()
            };
            rules.push(Rule {
                lhs: vec![hi, lo],
                rhs: NcPoly::monomial(table, sign, vec![lo, hi]),
            });
        }
    }
    rules
}

/// Coordinate ring of the 3-dimensional super sphere: the commutative ring
/// on `a, b, c, d` extended by two Grassmann generators, with the super
/// determinant relation `a*d - b*c + l+*l- = 1` folded into the rule for
/// `a*d`.
pub fn super_s3() -> Arc<Preset> {
    let one = Scalar::one;
    let neg = || Scalar::from_int(-1);
    let table = GeneratorTable::new(
        GradeGroup::Int,
        vec![
            GenInfo { name: "a".into(), degree: 1, star: Some((3, one())) },
            GenInfo { name: "b".into(), degree: -1, star: Some((2, neg())) },
            GenInfo { name: "c".into(), degree: 1, star: Some((1, neg())) },
            GenInfo { name: "d".into(), degree: -1, star: Some((0, one())) },
            GenInfo { name: "l+".into(), degree: 1, star: Some((5, neg())) },
            GenInfo { name: "l-".into(), degree: -1, star: Some((4, neg())) },
        ],
    );
    let precedence = ["b", "c", "l+", "l-", "a", "d"];
    let mut rules = sorting_rules(&table, &precedence, &[("l+", "l-")]);
    rules.push(word_rule(&table, &["l+", "l+"], NcPoly::zero(&table)));
    rules.push(word_rule(&table, &["l-", "l-"], NcPoly::zero(&table)));
    rules.push(word_rule(
        &table,
        &["a", "d"],
        parse_ncpoly(&table, "b*c + 1 - l+*l-").unwrap(),
    ));
    let pres = Presentation::new(table.clone(), &precedence, rules).expect("super-s3");
    let coinv = ["1", "a*b", "b*c", "c*d", "l+*b", "l+*d", "l-*a", "l-*c", "l+*l-"]
        .iter()
        .map(|s| parse_ncpoly(&table, s).unwrap())
        .collect();
    Arc::new(Preset {
        name: "super-s3".into(),
        kind: PresetKind::SuperS3,
        pres,
        hopf: None,
        pi_images: None,
        coinvariant_gens: coinv,
    })
}

/// The quantum `SL(2)` coordinate ring, calibrated so that the shipped
/// spin-bundle matrices are idempotent: `alpha delta - q^-1 beta gamma = 1`
/// and `delta alpha - q beta gamma = 1`.
pub fn slq2() -> Arc<Preset> {
    let one = Scalar::one;
    let q = Scalar::q_pow(1);
    let qi = Scalar::q_pow(-1);
    let table = GeneratorTable::new(
        GradeGroup::Int,
        vec![
            GenInfo { name: "alpha".into(), degree: 1, star: Some((3, one())) },
            GenInfo { name: "beta".into(), degree: -1, star: Some((2, qi.neg())) },
            GenInfo { name: "gamma".into(), degree: 1, star: Some((1, q.neg())) },
            GenInfo { name: "delta".into(), degree: -1, star: Some((0, one())) },
        ],
    );
    let precedence = ["beta", "gamma", "alpha", "delta"];
    let mono = |c: &Scalar, names: &[&str]| {
        NcPoly::monomial(
            &table,
            c.clone(),
            names.iter().map(|n| table.index_of(n).unwrap()).collect(),
        )
    };
    let det_tail = |c: &Scalar| mono(c, &["beta", "gamma"]).add(&NcPoly::one(&table));
    let rules = vec![
        word_rule(&table, &["alpha", "beta"], mono(&qi, &["beta", "alpha"])),
        word_rule(&table, &["alpha", "gamma"], mono(&qi, &["gamma", "alpha"])),
        word_rule(&table, &["delta", "beta"], mono(&q, &["beta", "delta"])),
        word_rule(&table, &["delta", "gamma"], mono(&q, &["gamma", "delta"])),
        word_rule(&table, &["gamma", "beta"], mono(&one(), &["beta", "gamma"])),
        word_rule(&table, &["delta", "alpha"], det_tail(&q)),
        word_rule(&table, &["alpha", "delta"], det_tail(&qi)),
    ];
    let pres = Presentation::new(table.clone(), &precedence, rules).expect("slq2");

    // Matrix coalgebra structure and antipode.
    let t2 = |src: &str| parse_tensor(&pres, &[Slot::P, Slot::P], src).unwrap();
    let hopf = HopfStructure {
        delta: vec![
            t2("alpha (x) alpha + beta (x) gamma"),
            t2("alpha (x) beta + beta (x) delta"),
            t2("gamma (x) alpha + delta (x) gamma"),
            t2("gamma (x) beta + delta (x) delta"),
        ],
        counit: vec![
            Scalar::one(),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::one(),
        ],
        antipode: vec![
            mono(&one(), &["delta"]),
            mono(&q.neg(), &["beta"]),
            mono(&qi.neg(), &["gamma"]),
            mono(&one(), &["alpha"]),
        ],
    };
    hopf.validate(&pres).expect("slq2 Hopf axioms");
    let coinv = ["1", "beta*alpha", "beta*gamma", "gamma*delta"]
        .iter()
        .map(|s| parse_ncpoly(&table, s).unwrap())
        .collect();
    Arc::new(Preset {
        name: "slq2".into(),
        kind: PresetKind::Slq2,
        pres,
        hopf: Some(Arc::new(hopf)),
        pi_images: Some(vec![Some(1), None, None, Some(-1)]),
        coinvariant_gens: coinv,
    })
}

/// The equator Podles quantum sphere with its `Z/2` coaction. The sphere
/// relation eliminates the square of the largest generator; the shipped
/// normal basis is `z^k x^i y^eps`.
pub fn podles_eq() -> Arc<Preset> {
    let one = Scalar::one;
    let table = GeneratorTable::new(
        GradeGroup::Mod2,
        vec![
            GenInfo { name: "x".into(), degree: 1, star: Some((0, one())) },
            GenInfo { name: "y".into(), degree: 1, star: Some((1, one())) },
            GenInfo { name: "z".into(), degree: 1, star: Some((2, one())) },
        ],
    );
    let precedence = ["z", "x", "y"];
    let half = Scalar::from_ratio(1, 2);
    // A = (q^2+q^-2)/2, B = i(q^-2-q^2)/2, C = i(q^4-1)/(q^4+1); A^2+B^2 = 1.
    let a = Scalar::q_pow(2).add(&Scalar::q_pow(-2)).mul(&half);
    let b = Scalar::i()
        .mul(&Scalar::q_pow(-2).sub(&Scalar::q_pow(2)))
        .mul(&half);
    let c = Scalar::i().mul(
        &Scalar::q_pow(4)
            .sub(&Scalar::one())
            .div(&Scalar::q_pow(4).add(&Scalar::one()))
            .unwrap(),
    );
    debug_assert!(a.mul(&a).add(&b.mul(&b)).is_one());
    let mono = |cf: &Scalar, names: &[&str]| {
        NcPoly::monomial(
            &table,
            cf.clone(),
            names.iter().map(|n| table.index_of(n).unwrap()).collect(),
        )
    };
    let rules = vec![
        word_rule(
            &table,
            &["x", "z"],
            mono(&a, &["z", "x"]).add(&mono(&b, &["z", "y"])),
        ),
        word_rule(
            &table,
            &["y", "z"],
            mono(&a, &["z", "y"]).sub(&mono(&b, &["z", "x"])),
        ),
        word_rule(
            &table,
            &["y", "x"],
            mono(&one(), &["x", "y"]).sub(&mono(&c, &["z", "z"])),
        ),
        word_rule(
            &table,
            &["y", "y"],
            NcPoly::one(&table)
                .sub(&mono(&one(), &["x", "x"]))
                .sub(&mono(&one(), &["z", "z"])),
        ),
    ];
    let pres = Presentation::new(table.clone(), &precedence, rules).expect("podles-eq");
    let coinv = ["1", "x*x", "x*y", "x*z", "y*y", "y*z", "z*z"]
        .iter()
        .map(|s| parse_ncpoly(&table, s).unwrap())
        .collect();
    Arc::new(Preset {
        name: "podles-eq".into(),
        kind: PresetKind::PodlesEq,
        pres,
        hopf: None,
        pi_images: None,
        coinvariant_gens: coinv,
    })
}

/// Classical `SL(2)` body: `q = 1`, no Grassmann directions.
pub fn classical_sl2() -> Arc<Preset> {
    let one = Scalar::one;
    let neg = || Scalar::from_int(-1);
    let table = GeneratorTable::new(
        GradeGroup::Int,
        vec![
            GenInfo { name: "a".into(), degree: 1, star: Some((3, one())) },
            GenInfo { name: "b".into(), degree: -1, star: Some((2, neg())) },
            GenInfo { name: "c".into(), degree: 1, star: Some((1, neg())) },
            GenInfo { name: "d".into(), degree: -1, star: Some((0, one())) },
        ],
    );
    let precedence = ["b", "c", "a", "d"];
    let mut rules = sorting_rules(&table, &precedence, &[]);
    rules.push(word_rule(
        &table,
        &["a", "d"],
        parse_ncpoly(&table, "b*c + 1").unwrap(),
    ));
    let pres = Presentation::new(table.clone(), &precedence, rules).expect("classical-sl2");
    let coinv = ["1", "a*b", "b*c", "c*d"]
        .iter()
        .map(|s| parse_ncpoly(&table, s).unwrap())
        .collect();
    Arc::new(Preset {
        name: "classical-sl2".into(),
        kind: PresetKind::ClassicalSl2,
        pres,
        hopf: None,
        pi_images: None,
        coinvariant_gens: coinv,
    })
}

pub fn builtin(name: &str) -> Option<Arc<Preset>> {
    match name {
        "super-s3" => Some(super_s3()),
        "slq2" => Some(slq2()),
        "podles-eq" => Some(podles_eq()),
        "classical-sl2" => Some(classical_sl2()),
        _ => None,
    }
}

pub const BUILTIN_NAMES: [&str; 4] = ["super-s3", "slq2", "podles-eq", "classical-sl2"];

// ---------------------------------------------------------------------------
// Preset definition files.
// ---------------------------------------------------------------------------

/// Serializes a preset to the structured text format accepted by
/// [`parse_preset`].
pub fn serialize_preset(p: &Preset) -> String {
    let mut out = String::new();
    out.push_str(&format!("preset {}\n", p.name));
    out.push_str(&format!(
        "group {}\n",
        match p.group() {
            GradeGroup::Int => "Z",
            GradeGroup::Mod2 => "Z2",
        }
    ));
    for g in &p.pres.table.gens {
        let mut line = format!("gen {} deg {}", g.name, g.degree);
        if let Some((img, coeff)) = &g.star {
            let target = &p.pres.table.gens[*img].name;
            if coeff.is_one() {
                line.push_str(&format!(" star {}", target));
            } else {
                line.push_str(&format!(" star ({}) * {}", coeff, target));
            }
        }
        out.push_str(&line);
        out.push('\n');
    }
    let mut order: Vec<(u8, &str)> = p
        .pres
        .table
        .gens
        .iter()
        .enumerate()
        .map(|(k, g)| (p.pres.rank[k], g.name.as_str()))
        .collect();
    order.sort();
    out.push_str("order ");
    out.push_str(
        &order
            .iter()
            .map(|(_, n)| n.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    out.push('\n');
    for r in &p.pres.rules {
        out.push_str(&format!(
            "rule {} -> {}\n",
            p.pres.word_to_str(&r.lhs),
            r.rhs
        ));
    }
    for c in &p.coinvariant_gens {
        out.push_str(&format!("coinv {}\n", c));
    }
    if let Some(h) = &p.hopf {
        out.push_str("hopf\n");
        for (k, g) in p.pres.table.gens.iter().enumerate() {
            out.push_str(&format!("delta {} -> {}\n", g.name, h.delta[k]));
            out.push_str(&format!("counit {} -> {}\n", g.name, h.counit[k]));
            out.push_str(&format!("antipode {} -> {}\n", g.name, h.antipode[k]));
        }
        out.push_str("end\n");
    }
    if let Some(images) = &p.pi_images {
        for (k, img) in images.iter().enumerate() {
            let name = &p.pres.table.gens[k].name;
            match img {
                None => out.push_str(&format!("pi {} 0\n", name)),
                Some(e) => out.push_str(&format!("pi {} z^{}\n", name, e)),
            }
        }
    }
    out
}

/// Parses a preset definition file.
pub fn parse_preset(src: &str) -> Result<Arc<Preset>, HgError> {
    let mut name = String::new();
    let mut group = GradeGroup::Int;
    let mut gens: Vec<(String, i64, Option<String>)> = vec![];
    let mut order: Vec<String> = vec![];
    let mut rule_lines: Vec<(String, String)> = vec![];
    let mut coinv_lines: Vec<String> = vec![];
    let mut hopf_lines: Vec<(String, String, String)> = vec![];
    let mut pi_lines: Vec<(String, String)> = vec![];
    let mut in_hopf = false;

    for raw in src.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if in_hopf {
            if line == "end" {
                in_hopf = false;
                continue;
            }
            let (kw, rest) = line
                .split_once(' ')
                .ok_or_else(|| HgError::Parse(format!("bad hopf line `{line}`")))?;
            let (gen, val) = rest
                .split_once("->")
                .ok_or_else(|| HgError::Parse(format!("bad hopf line `{line}`")))?;
            hopf_lines.push((kw.into(), gen.trim().into(), val.trim().into()));
            continue;
        }
        let (kw, rest) = line.split_once(' ').unwrap_or((line, ""));
        match kw {
            "preset" => name = rest.trim().into(),
            "group" => {
                group = match rest.trim() {
                    "Z" => GradeGroup::Int,
                    "Z2" => GradeGroup::Mod2,
                    other => {
                        return Err(HgError::Parse(format!("unknown group `{other}`")))
                    }
                }
            }
            "gen" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() < 3 || toks[1] != "deg" {
                    return Err(HgError::Parse(format!("bad gen line `{line}`")));
                }
                let deg: i64 = toks[2]
                    .parse()
                    .map_err(|_| HgError::Parse(format!("bad degree in `{line}`")))?;
                let star = if toks.len() > 4 && toks[3] == "star" {
                    Some(toks[4..].join(" "))
                } else {
                    None
                };
                gens.push((toks[0].into(), deg, star));
            }
            "order" => order = rest.split_whitespace().map(String::from).collect(),
            "rule" => {
                let (lhs, rhs) = rest
                    .split_once("->")
                    .ok_or_else(|| HgError::Parse(format!("bad rule line `{line}`")))?;
                rule_lines.push((lhs.trim().into(), rhs.trim().into()));
            }
            "coinv" => coinv_lines.push(rest.trim().into()),
            "hopf" => in_hopf = true,
            "pi" => {
                let toks: Vec<&str> = rest.split_whitespace().collect();
                if toks.len() != 2 {
                    return Err(HgError::Parse(format!("bad pi line `{line}`")));
                }
                pi_lines.push((toks[0].into(), toks[1].into()));
            }
            other => return Err(HgError::Parse(format!("unknown keyword `{other}`"))),
        }
    }

    // Build the table in two passes so star images can refer forward.
    let plain: Vec<GenInfo> = gens
        .iter()
        .map(|(n, d, _)| GenInfo {
            name: n.clone(),
            degree: *d,
            star: None,
        })
        .collect();
    let scratch = GeneratorTable::new(group, plain.clone());
    let mut with_star = plain;
    for (k, (_, _, star_text)) in gens.iter().enumerate() {
        if let Some(text) = star_text {
            let img = parse_ncpoly(&scratch, text)?;
            if img.terms.len() != 1 {
                return Err(HgError::Parse(format!(
                    "star image must be one monomial: `{text}`"
                )));
            }
            let (w, c) = img.terms.iter().next().unwrap();
            if w.0.len() != 1 {
                return Err(HgError::Parse(format!(
                    "star image must be one generator: `{text}`"
                )));
            }
            with_star[k].star = Some((w.0[0] as usize, c.clone()));
        }
    }
    let table = GeneratorTable::new(group, with_star);
    let mut rules = vec![];
    for (lhs, rhs) in &rule_lines {
        let lhs_poly = parse_ncpoly(&table, lhs)?;
        if lhs_poly.terms.len() != 1 {
            return Err(HgError::Parse(format!("rule LHS must be one word: `{lhs}`")));
        }
        let (w, c) = lhs_poly.terms.iter().next().unwrap();
        if !c.is_one() {
            return Err(HgError::Parse(format!("rule LHS must be monic: `{lhs}`")));
        }
        rules.push(Rule {
            lhs: w.0.clone(),
            rhs: parse_ncpoly(&table, rhs)?,
        });
    }
    let order_refs: Vec<&str> = order.iter().map(String::as_str).collect();
    let pres = Presentation::new(table.clone(), &order_refs, rules)?;

    let hopf = if hopf_lines.is_empty() {
        None
    } else {
        let n = table.len();
        let mut delta = vec![None; n];
        let mut counit = vec![None; n];
        let mut antipode = vec![None; n];
        for (kw, gen, val) in &hopf_lines {
            let idx = table.index_of(gen)? as usize;
            match kw.as_str() {
                "delta" => {
                    delta[idx] = Some(parse_tensor(&pres, &[Slot::P, Slot::P], val)?)
                }
                "counit" => counit[idx] = Some(val.parse::<Scalar>()?),
                "antipode" => antipode[idx] = Some(parse_ncpoly(&table, val)?),
                other => {
                    return Err(HgError::Parse(format!("unknown hopf keyword `{other}`")))
                }
            }
        }
        fn unwrap_all<T>(
            v: Vec<Option<T>>,
            what: &str,
            table: &GeneratorTable,
        ) -> Result<Vec<T>, HgError> {
            v.into_iter()
                .enumerate()
                .map(|(k, o)| {
                    o.ok_or_else(|| {
                        HgError::Parse(format!(
                            "missing {what} for generator {}",
                            table.gens[k].name
                        ))
                    })
                })
                .collect()
        }
        let h = HopfStructure {
            delta: unwrap_all(delta, "delta", &table)?,
            counit: unwrap_all(counit, "counit", &table)?,
            antipode: unwrap_all(antipode, "antipode", &table)?,
        };
        h.validate(&pres)?;
        Some(Arc::new(h))
    };

    let pi_images = if pi_lines.is_empty() {
        None
    } else {
        let mut images = vec![None; table.len()];
        for (gen, val) in &pi_lines {
            let idx = table.index_of(gen)? as usize;
            images[idx] = match val.as_str() {
                "0" => None,
                "z" => Some(1),
                v => {
                    let e = v
                        .strip_prefix("z^")
                        .and_then(|s| s.parse::<i64>().ok())
                        .ok_or_else(|| HgError::Parse(format!("bad pi image `{v}`")))?;
                    Some(e)
                }
            };
        }
        Some(images)
    };

    let coinvariant_gens = coinv_lines
        .iter()
        .map(|s| parse_ncpoly(&table, s))
        .collect::<Result<Vec<_>, _>>()?;

    // Recognize shipped presets loaded from files so they keep their
    // special-cased constructions.
    let kind = match name.as_str() {
        "super-s3" => PresetKind::SuperS3,
        "slq2" => PresetKind::Slq2,
        "podles-eq" => PresetKind::PodlesEq,
        "classical-sl2" => PresetKind::ClassicalSl2,
        _ => PresetKind::User,
    };

    Ok(Arc::new(Preset {
        name,
        kind,
        pres,
        hopf,
        pi_images,
        coinvariant_gens,
    }))
}

/// Looks up a preset: built-ins first, then `<dir>/<name>.preset` for each
/// directory on the colon-separated search path.
pub fn resolve_preset(name: &str, search_path: Option<&str>) -> Result<Arc<Preset>, HgError> {
    if let Some(p) = builtin(name) {
        return Ok(p);
    }
    if let Some(dirs) = search_path {
        for dir in dirs.split(':').filter(|d| !d.is_empty()) {
            let candidate = std::path::Path::new(dir).join(format!("{name}.preset"));
            if candidate.exists() {
                let src = std::fs::read_to_string(&candidate)
                    .map_err(|e| HgError::Other(format!("reading {candidate:?}: {e}")))?;
                return parse_preset(&src);
            }
        }
    }
    Err(HgError::UnsupportedPreset(name.to_string()))
}

/// Degree-0 normal-basis monomials of word length `<= bound`.
pub fn coinvariant_monomials(preset: &Preset, bound: usize) -> Vec<NcPoly> {
    let mut out = vec![];
    for len in 0..=bound {
        for w in preset.pres.normal_words_of_degree_exact(len, 0) {
            out.push(NcPoly::monomial(&preset.pres.table, Scalar::one(), w));
        }
    }
    out
}

/// Incremental span of polynomials with leading-term elimination.
pub struct PolySpan {
    rows: BTreeMap<WordKey, BTreeMap<WordKey, Scalar>>,
}

impl PolySpan {
    pub fn new() -> Self {
        PolySpan {
            rows: BTreeMap::new(),
        }
    }

    fn residue(&self, p: &NcPoly) -> BTreeMap<WordKey, Scalar> {
        let mut v: BTreeMap<WordKey, Scalar> =
            p.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
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

    /// Returns `true` when `p` enlarged the span.
    pub fn insert(&mut self, p: &NcPoly) -> bool {
        let mut v = self.residue(p);
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

    pub fn contains(&self, p: &NcPoly) -> bool {
        self.residue(p).is_empty()
    }
}

impl Default for PolySpan {
    fn default() -> Self {
        Self::new()
    }
}

/// Verifies that every degree-0 normal monomial of word length `<= bound`
/// lies in the span of products of the shipped coinvariant generators
/// (exact linear algebra; products truncated at word length `bound`, which
/// suffices because reduction never lengthens words).
pub fn coinvariant_generation_check(preset: &Preset, bound: usize) -> Result<bool, HgError> {
    let pres = &preset.pres;
    let gens: Vec<NcPoly> = preset
        .coinvariant_gens
        .iter()
        .map(|g| pres.normal_form(g))
        .filter(|g| !g.terms.keys().all(|w| w.0.is_empty()))
        .collect();
    let cap = bound;

    let mut span = PolySpan::new();
    let one = NcPoly::one(&pres.table);
    span.insert(&one);
    let mut queue = vec![one];
    while let Some(f) = queue.pop() {
        for g in &gens {
            let prod = pres.mul_nf(&f, g)?;
            if prod.is_zero() || prod.terms.keys().any(|w| w.0.len() > cap) {
                continue;
            }
            if span.insert(&prod) {
                queue.push(prod);
            }
        }
    }

    for m in coinvariant_monomials(preset, bound) {
        if !span.contains(&m) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewrite::{subspace_membership, SubspaceFamily};
    use crate::tensor::{FactorPoly, TensorElem};

    fn nfp(p: &Preset, src: &str) -> NcPoly {
        p.pres
            .normal_form(&parse_ncpoly(&p.pres.table, src).unwrap())
    }

    #[test]
    fn super_normal_forms() {
        let p = super_s3();
        assert_eq!(nfp(&p, "a*d"), nfp(&p, "b*c + 1 - l+*l-"));
        assert_eq!(nfp(&p, "l-*l+"), nfp(&p, "-l+*l-"));
        // (ad - bc)^2 = 1 - 2 l+l- using the square-zero Grassmann pair.
        let det = nfp(&p, "a*d - b*c");
        let sq = p.pres.mul_nf(&det, &det).unwrap();
        assert_eq!(sq, nfp(&p, "1 - 2*l+*l-"));
        // Defining relations all reduce to zero.
        assert!(nfp(&p, "l+*l+").is_zero());
        assert!(nfp(&p, "l+*l- + l-*l+").is_zero());
        assert!(nfp(&p, "a*d - b*c + l+*l- - 1").is_zero());
        // Centrality of the even letters.
        assert_eq!(nfp(&p, "a*l+"), nfp(&p, "l+*a"));
    }

    #[test]
    fn slq2_normal_forms() {
        let p = slq2();
        assert!(nfp(&p, "delta*alpha - q*beta*gamma - 1").is_zero());
        let qinv = Scalar::q_pow(-1);
        let bg = parse_ncpoly(&p.pres.table, "beta*gamma").unwrap();
        let rel = parse_ncpoly(&p.pres.table, "alpha*delta - 1")
            .unwrap()
            .sub(&bg.scale(&qinv));
        assert!(p.pres.normal_form(&rel).is_zero());
    }

    #[test]
    fn podles_normal_forms() {
        let p = podles_eq();
        assert!(nfp(&p, "x*x + y*y + z*z - 1").is_zero());
        // The published relations, as stated, reduce to zero.
        let half = Scalar::from_ratio(1, 2);
        let a = Scalar::q_pow(2).add(&Scalar::q_pow(-2)).mul(&half);
        let b = Scalar::i()
            .mul(&Scalar::q_pow(-2).sub(&Scalar::q_pow(2)))
            .mul(&half);
        let c = Scalar::i().mul(
            &Scalar::q_pow(4)
                .sub(&Scalar::one())
                .div(&Scalar::q_pow(4).add(&Scalar::one()))
                .unwrap(),
        );
        let t = &p.pres.table;
        let xz = parse_ncpoly(t, "x*z").unwrap();
        let zx = parse_ncpoly(t, "z*x").unwrap();
        let zy = parse_ncpoly(t, "z*y").unwrap();
        let yz = parse_ncpoly(t, "y*z").unwrap();
        let rel1 = xz.sub(&zx.scale(&a)).sub(&zy.scale(&b));
        assert!(p.pres.normal_form(&rel1).is_zero());
        let rel2 = yz.sub(&zy.scale(&a)).add(&zx.scale(&b));
        assert!(p.pres.normal_form(&rel2).is_zero());
        let xy = parse_ncpoly(t, "x*y").unwrap();
        let yx = parse_ncpoly(t, "y*x").unwrap();
        let zz = parse_ncpoly(t, "z*z").unwrap();
        let rel3 = xy.sub(&yx).sub(&zz.scale(&c));
        assert!(p.pres.normal_form(&rel3).is_zero());
        // Star is consistent with the relations: star(rel1) reduces to zero.
        let srel = rel1.star().unwrap();
        assert!(p.pres.normal_form(&srel).is_zero());
    }

    #[test]
    fn all_presets_confluent_to_degree_6() {
        for name in BUILTIN_NAMES {
            let p = builtin(name).unwrap();
            let report = p.pres.check_confluence(6);
            assert!(
                report.passed(),
                "preset {name}: {} unresolved pairs, first: {:?}",
                report.failures.len(),
                report.failures.first()
            );
            assert!(report.pairs_checked > 0);
        }
    }

    #[test]
    fn weyl_like_example_resolves() {
        // {ba -> ab+1, cb -> bc+1, ca -> ac} has a single overlap `cba`,
        // and it is joinable.
        let table = GeneratorTable::new(
            GradeGroup::Int,
            vec![
                GenInfo { name: "a".into(), degree: 0, star: None },
                GenInfo { name: "b".into(), degree: 0, star: None },
                GenInfo { name: "c".into(), degree: 0, star: None },
            ],
        );
        let rules = vec![
            Rule {
                lhs: vec![1, 0],
                rhs: parse_ncpoly(&table, "a*b + 1").unwrap(),
            },
            Rule {
                lhs: vec![2, 1],
                rhs: parse_ncpoly(&table, "b*c + 1").unwrap(),
            },
            Rule {
                lhs: vec![2, 0],
                rhs: parse_ncpoly(&table, "a*c").unwrap(),
            },
        ];
        let pres = Presentation::new(table, &["a", "b", "c"], rules).unwrap();
        let report = pres.check_confluence(6);
        assert!(report.passed(), "{:?}", report.failures);
    }

    #[test]
    fn independence_checks() {
        let p = super_s3();
        let t = &p.pres.table;
        // Spanning monomials of the charge -2 module.
        let polys: Vec<NcPoly> = ["a*a", "a*c", "c*c", "a*l+", "c*l+"]
            .iter()
            .map(|s| parse_ncpoly(t, s).unwrap())
            .collect();
        let (ok, _) = p.pres.linear_independent(&polys);
        assert!(ok);
        // {a, 2a} dependent, with a valid vanishing combination.
        let a = parse_ncpoly(t, "a").unwrap();
        let two_a = parse_ncpoly(t, "2*a").unwrap();
        let (ok, witness) = p.pres.linear_independent(&[a.clone(), two_a.clone()]);
        assert!(!ok);
        let w = witness.unwrap();
        let combo = a.scale(&w[0]).add(&two_a.scale(&w[1]));
        assert!(p.pres.normal_form(&combo).is_zero());
        assert!(!w[0].is_zero() || !w[1].is_zero());
        // Two spellings of the same normal form are dependent.
        let ad = parse_ncpoly(t, "a*d").unwrap();
        let rest = parse_ncpoly(t, "b*c + 1 - l+*l-").unwrap();
        let (ok, _) = p.pres.linear_independent(&[ad, rest]);
        assert!(!ok);
    }

    #[test]
    fn subspace_membership_examples() {
        let p = super_s3();
        let t = &p.pres.table;
        // d(b).p for b = a*b, p = c lies in (Omega^1 B) P.
        let b = parse_ncpoly(t, "a*b").unwrap();
        let c = parse_ncpoly(t, "c").unwrap();
        let db = TensorElem::d_universal(&p.pres, &b);
        let dbp = db.act_right(&c).unwrap();
        let member = subspace_membership(
            &p.pres,
            &dbp.to_pair_map().unwrap(),
            SubspaceFamily::KerMOverB,
            4,
        )
        .unwrap();
        assert!(member);
        // podles: x d(x^2) is not in (Omega^1 B) P.
        let pp = podles_eq();
        let x = parse_ncpoly(&pp.pres.table, "x").unwrap();
        let x2 = parse_ncpoly(&pp.pres.table, "x*x").unwrap();
        let xdx2 = TensorElem::d_universal(&pp.pres, &x2)
            .act_left(&x)
            .unwrap();
        let member = subspace_membership(
            &pp.pres,
            &xdx2.to_pair_map().unwrap(),
            SubspaceFamily::KerMOverB,
            4,
        )
        .unwrap();
        assert!(!member);
        // Bound too small to contain the target.
        let err = subspace_membership(
            &pp.pres,
            &xdx2.to_pair_map().unwrap(),
            SubspaceFamily::KerMOverB,
            2,
        );
        assert!(err.is_err());
    }

    #[test]
    fn coinvariant_generation() {
        assert!(coinvariant_generation_check(&super_s3(), 4).unwrap());
        assert!(coinvariant_generation_check(&podles_eq(), 4).unwrap());
        assert!(coinvariant_generation_check(&super_s3(), 0).unwrap());
    }

    // Keep an unused-import warning away in non-test builds.
    #[allow(unused_imports)]
    use crate::tensor::Slot as _Slot;

    #[test]
    fn preset_file_round_trip() {
        for name in BUILTIN_NAMES {
            let p = builtin(name).unwrap();
            let text = serialize_preset(&p);
            let q = parse_preset(&text).expect(name);
            assert_eq!(q.name, p.name);
            assert_eq!(q.pres.table, p.pres.table);
            assert_eq!(q.pres.rank, p.pres.rank);
            assert_eq!(q.pres.rules.len(), p.pres.rules.len());
            for (r1, r2) in q.pres.rules.iter().zip(p.pres.rules.iter()) {
                assert_eq!(r1.lhs, r2.lhs);
                assert_eq!(r1.rhs, r2.rhs);
            }
            assert_eq!(q.coinvariant_gens, p.coinvariant_gens);
            assert_eq!(q.pi_images, p.pi_images);
        }
    }

    #[test]
    fn normal_word_counts_match_sphere_dimensions() {
        let p = podles_eq();
        for n in 1..=5usize {
            assert_eq!(p.pres.normal_words(n).len(), 2 * n + 1);
        }
    }

    #[test]
    fn super_direct_sum_partition() {
        // Every normal monomial of length <= 6 lies in exactly one graded
        // component, and the components partition the basis.
        let p = super_s3();
        for len in 0..=6usize {
            let all = p.pres.normal_words(len);
            let mut by_degree = std::collections::BTreeMap::new();
            for w in &all {
                *by_degree
                    .entry(p.pres.table.word_degree(w))
                    .or_insert(0usize) += 1;
            }
            let total: usize = by_degree.values().sum();
            assert_eq!(total, all.len());
        }
    }
}
