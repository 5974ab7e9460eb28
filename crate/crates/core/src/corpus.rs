//! The bundled example algebras and the checks run over them.

use serde::Serialize;

use crate::algebra::{build_algebra, FDAlgebra, SparseVec};
use crate::criteria::{
    cartan_criterion, determinant_at_one, find_two_truncated_cycle, find_two_truncated_cycle_among, graded_cartan,
    hhdim_verdict_for_algebra, trivial_extension_determinant_shape, verify_certificate, CartanOutcome, Certificate,
    Conclusion, VerdictOptions,
};
use crate::hochschild::{check_boundary_squares, hh_dims, HHOptions, Variant};
use crate::linalg::IntPolynomial;
use crate::quiver::parse_presentation;
use crate::trivial_ext::{graded_trivial_extension, trivial_extension, TrivialExtensionData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub file: &'static str,
    #[serde(skip)]
    pub source: &'static str,
    pub description: &'static str,
}

macro_rules! entry {
    ($name:literal, $desc:literal) => {
        CorpusEntry {
            name: $name,
            file: concat!($name, ".quiver"),
            source: include_str!(concat!("../corpus/", $name, ".quiver")),
            description: $desc,
        }
    };
}

pub const ENTRIES: &[CorpusEntry] = &[
    entry!("field", "the ground field k"),
    entry!("dual_numbers", "k[x]/(x^2)"),
    entry!("local_xy", "k[x,y]/(x^2, xy, yx, y^2)"),
    entry!("two_points", "k x k"),
    entry!("a2_path", "path algebra of 1 -> 2"),
    entry!("a3_zero", "path algebra of 1 -> 2 -> 3 modulo the composite"),
    entry!("cyclic2_rad2", "cyclic Nakayama algebra on 2 vertices, radical square zero"),
    entry!("cyclic3_rad2", "cyclic Nakayama algebra on 3 vertices, radical square zero"),
    entry!("five_vertex_graded", "five vertices, degrees (3,3,2,2,2), two paths 1 -> 3 identified"),
];

pub fn entry(name: &str) -> Option<&'static CorpusEntry> {
    ENTRIES.iter().find(|e| e.name == name || e.file == name)
}

/// Builds a bundled algebra. Panics only if a bundled file is broken, which
/// the test suite rules out.
pub fn load(name: &str) -> FDAlgebra {
    let e = entry(name).unwrap_or_else(|| panic!("no corpus entry `{name}`"));
    build_algebra(&parse_presentation(e.source).expect("bundled file parses")).expect("bundled file builds")
}

/// Cap used by the corroboration check, above the interactive default.
pub const CORROBORATION_CAP: usize = 200_000;
pub const CORROBORATION_DEGREE: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub criterion: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntrySummary {
    pub name: String,
    pub dim: usize,
    pub extension_dim: usize,
    pub local: bool,
    pub selfinjective: bool,
    pub graded: bool,
    pub conclusion: Conclusion,
    pub certificate: Option<&'static str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub entries: Vec<EntrySummary>,
    pub checks: Vec<CheckOutcome>,
    pub all_passed: bool,
}

impl CorpusReport {
    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// A wrong structure constant to plant in one entry before the checks run.
#[derive(Clone, Debug, PartialEq)]
pub struct Corruption {
    pub entry: String,
    pub left: usize,
    pub right: usize,
    pub value: SparseVec,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct CorpusOptions {
    pub corruption: Option<Corruption>,
}

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Loaded {
    name: String,
    base: FDAlgebra,
    ext: TrivialExtensionData,
}

fn loaded(options: &CorpusOptions) -> Vec<Loaded> {
    let mut out: Vec<Loaded> = ENTRIES
        .iter()
        .map(|e| {
            let mut base = load(e.name);
            if let Some(c) = options.corruption.as_ref().filter(|c| c.entry == e.name) {
                base = base.with_corrupted_product(c.left, c.right, c.value.clone());
            }
            let ext = trivial_extension(&base);
            Loaded {
                name: e.name.to_string(),
                base,
                ext,
            }
        })
        .collect();
    // T(k[x]/(x^2)) as a base, so T(T(k[x]/(x^2))) is checked too
    let td = trivial_extension(&load("dual_numbers")).algebra;
    out.push(Loaded {
        name: "T(dual_numbers)".into(),
        ext: trivial_extension(&td),
        base: td,
    });
    out
}

fn get<'a>(all: &'a [Loaded], name: &str) -> &'a Loaded {
    all.iter().find(|l| l.name == name).expect("loaded entry")
}

fn cycle_certified(a: &FDAlgebra) -> Check {
    let j = hhdim_verdict_for_algebra(a, VerdictOptions { extend: true });
    ensure(j.verdict.conclusion == Conclusion::InfiniteHHdim, || "verdict is Unknown".into())?;
    match &j.verdict.certificate {
        Some(Certificate::TruncatedCycle(c)) => {
            verify_certificate(&j.algebra, c)?;
            Ok(c.names.join(" "))
        }
        other => Err(format!("expected a cycle certificate, got {other:?}")),
    }
}

fn local_instances(all: &[Loaded]) -> Check {
    let mut found = Vec::new();
    for name in ["field", "dual_numbers", "local_xy"] {
        let l = get(all, name);
        ensure(l.base.is_local(), || format!("{name} is not local"))?;
        found.push(format!("{name}: {}", cycle_certified(&l.base).map_err(|e| format!("{name}: {e}"))?));
    }
    Ok(found.join("; "))
}

fn selfinjective_instances(all: &[Loaded]) -> Check {
    let mut found = Vec::new();
    for name in ["cyclic2_rad2", "cyclic3_rad2"] {
        let l = get(all, name);
        let cert = l.base.is_selfinjective().map_err(|e| format!("{name}: {}", e.reason))?;
        let t = &l.ext;
        let new: Vec<usize> = (t.old_arrow_count..t.t().arrows().len()).collect();
        let c = find_two_truncated_cycle_among(t.t(), &new).ok_or_else(|| format!("{name}: no cycle of new arrows"))?;
        ensure(c.arrows.iter().all(|&i| t.is_new_arrow(i)), || format!("{name}: old arrow in cycle"))?;
        verify_certificate(t.t(), &c)?;
        for i in 0..l.base.vertex_count() {
            let src = cert.permutation[i];
            ensure(
                t.new_arrows().iter().any(|b| b.target == i && b.source == src),
                || format!("{name}: no new arrow {src} -> {i}"),
            )?;
        }
        cycle_certified(&l.base).map_err(|e| format!("{name}: {e}"))?;
        found.push(format!("{name}: {}", c.names.join(" ")));
    }
    Ok(found.join("; "))
}

fn double_extension_instances(all: &[Loaded]) -> Check {
    let mut found = Vec::new();
    for name in ["dual_numbers", "a2_path"] {
        let l = get(all, name);
        let tt = trivial_extension(l.ext.t());
        ensure(tt.t().dim() == 4 * l.base.dim(), || {
            format!("{name}: dim T(T(A)) = {} != 4 * {}", tt.t().dim(), l.base.dim())
        })?;
        let c = find_two_truncated_cycle(tt.t()).ok_or_else(|| format!("{name}: no cycle in T(T(A))"))?;
        verify_certificate(tt.t(), &c)?;
        found.push(format!("{name}: dim {} cycle {}", tt.t().dim(), c.names.join(" ")));
    }
    Ok(found.join("; "))
}

fn graded_instances(all: &[Loaded]) -> Check {
    let mut found = Vec::new();
    for (name, degree) in [("a2_path", 4), ("five_vertex_graded", 35)] {
        let l = get(all, name);
        let t = graded_trivial_extension(&l.base).map_err(|e| format!("{name}: {e}"))?;
        let g = graded_cartan(t.t()).map_err(|e| format!("{name}: {e}"))?;
        let shape = trivial_extension_determinant_shape(&g).map_err(|e| format!("{name}: {e}"))?;
        ensure(shape.determinant_degree == degree, || {
            format!("{name}: determinant degree {} != {degree}", shape.determinant_degree)
        })?;
        ensure(matches!(cartan_criterion(&g, 0), CartanOutcome::InfiniteHHdim { .. }), || {
            format!("{name}: criterion did not fire")
        })?;
        found.push(format!("{name}: degree {degree}"));
    }
    Ok(found.join("; "))
}

fn exact_cartan_value(all: &[Loaded]) -> Check {
    let l = get(all, "a2_path");
    let t = graded_trivial_extension(&l.base).map_err(|e| e.to_string())?;
    let g = graded_cartan(t.t()).map_err(|e| e.to_string())?;
    let expected = IntPolynomial::from_i64s(&[1, 0, 1, 0, 1]);
    ensure(g.determinant == expected, || format!("det = {}", g.determinant))?;
    let (at_one, ungraded) = determinant_at_one(t.t(), &g);
    ensure(at_one == ungraded, || format!("det C(1) = {at_one} but ungraded det = {ungraded}"))?;
    Ok(format!("det = {}, det C(1) = {at_one}", g.determinant))
}

fn homology_oracle(all: &[Loaded]) -> Check {
    let o = HHOptions::default();
    for (name, n, expected) in [
        ("field", 4, vec![1, 0, 0, 0, 0]),
        ("dual_numbers", 4, vec![2, 1, 1, 1, 1]),
        ("a2_path", 3, vec![2, 0, 0, 0]),
    ] {
        let a = &get(all, name).base;
        let got = hh_dims(a, n, &o).map_err(|e| format!("{name}: {e}"))?.dims_vec();
        ensure(got == expected, || format!("{name}: HH dims {got:?} != {expected:?}"))?;
        for variant in [Variant::Normalized, Variant::Full] {
            let bad = check_boundary_squares(a, n, variant, o.cap).map_err(|e| e.to_string())?;
            ensure(bad.is_none(), || format!("{name}: b b != 0 in degree {bad:?}"))?;
        }
    }
    let mut compared = 0;
    for l in all.iter().filter(|l| l.base.dim() <= 4) {
        let n = hh_dims(&l.base, 3, &o).map_err(|e| format!("{}: {e}", l.name))?;
        let f = hh_dims(&l.base, 3, &HHOptions { variant: Variant::Full, ..o }).map_err(|e| format!("{}: {e}", l.name))?;
        ensure(!n.is_truncated() && !f.is_truncated(), || format!("{}: cap hit", l.name))?;
        ensure(n.dims_vec() == f.dims_vec(), || {
            format!("{}: normalized {:?} != full {:?}", l.name, n.dims_vec(), f.dims_vec())
        })?;
        compared += 1;
    }
    Ok(format!("fixed values match; variants agree on {compared} algebras"))
}

fn corroboration(all: &[Loaded]) -> Check {
    let o = HHOptions {
        variant: Variant::Normalized,
        cap: CORROBORATION_CAP,
    };
    let mut found = Vec::new();
    for l in all.iter().filter(|l| l.ext.t().dim() <= 8) {
        let t = l.ext.t();
        let v = hhdim_verdict_for_algebra(&l.base, VerdictOptions { extend: true }).verdict;
        ensure(v.conclusion == Conclusion::InfiniteHHdim, || format!("T({}): verdict Unknown", l.name))?;
        let r = hh_dims(t, CORROBORATION_DEGREE, &o).map_err(|e| format!("T({}): {e}", l.name))?;
        ensure(!r.is_truncated(), || format!("T({}): cap hit at {:?}", l.name, r.cap_hit))?;
        ensure((1..=CORROBORATION_DEGREE).all(|n| r.dim(n).is_some_and(|d| d >= 1)), || {
            format!("T({}): HH dims {:?}", l.name, r.dims_vec())
        })?;
        found.push(format!("T({}) {:?}", l.name, r.dims_vec()));
    }
    Ok(found.join("; "))
}

/// Structure checks on `A` and its trivial extension.
pub fn check_extension(base: &FDAlgebra, data: &TrivialExtensionData) -> std::result::Result<(), String> {
    let t = data.t();
    for (which, alg) in [("A", base), ("T(A)", t)] {
        if let Some((i, j, k)) = alg.check_associativity() {
            let l = alg.labels();
            return Err(format!("{which}: associativity fails on ({}, {}, {})", l[i], l[j], l[k]));
        }
        ensure(alg.check_idempotent_completeness(), || format!("{which}: idempotents incomplete"))?;
    }
    ensure(t.dim() == 2 * base.dim(), || format!("dim T(A) = {} != 2 * {}", t.dim(), base.dim()))?;
    ensure(t.radical().same_as(&data.expected_radical()), || "rad T(A) != r + DA".into())?;
    ensure(t.radical_power(2).same_as(&data.expected_radical_square(base)), || {
        "rad^2 T(A) != r^2 + (r DA + DA r)".into()
    })?;
    data.check_symmetric_form()?;
    ensure(data.check_new_products_vanish(), || "a product of new arrows is nonzero".into())
}

fn structural_invariants(all: &[Loaded]) -> Check {
    for l in all {
        check_extension(&l.base, &l.ext).map_err(|e| format!("{}: {e}", l.name))?;
    }
    // negative control: a planted wrong constant must be caught
    let xy = load("local_xy");
    let (x, y) = (1, 2);
    let f = xy.field();
    let bad = xy.with_corrupted_product(x, y, vec![(x, f.one())]);
    match check_extension(&bad, &trivial_extension(&bad)) {
        Err(e) if e.contains("associativity") => {}
        other => return Err(format!("planted constant not detected: {other:?}")),
    }
    Ok(format!("{} algebras and their extensions; planted constant rejected", all.len()))
}

fn negative_control(all: &[Loaded]) -> Check {
    let k = &get(all, "field").base;
    let v = hhdim_verdict_for_algebra(k, VerdictOptions::default()).verdict;
    ensure(v.conclusion == Conclusion::Unknown, || "k was certified".into())?;
    let a2 = get(all, "a2_path");
    ensure(find_two_truncated_cycle(a2.ext.t()).is_none(), || "T(1 -> 2) has a cycle".into())?;
    let v = hhdim_verdict_for_algebra(&a2.base, VerdictOptions { extend: true }).verdict;
    ensure(matches!(v.certificate, Some(Certificate::CartanDeterminant { .. })), || {
        format!("T(1 -> 2) certificate is {:?}", v.certificate)
    })?;
    Ok("k: Unknown; T(1 -> 2): no cycle, Cartan certificate".into())
}

const CRITERIA: [(&str, fn(&[Loaded]) -> Check); 9] = [
    ("local instances", local_instances),
    ("selfinjective instances", selfinjective_instances),
    ("double trivial extensions", double_extension_instances),
    ("graded instances", graded_instances),
    ("exact Cartan value", exact_cartan_value),
    ("homology oracle", homology_oracle),
    ("homology corroboration", corroboration),
    ("structural invariants", structural_invariants),
    ("negative control", negative_control),
];

pub fn run_corpus(options: &CorpusOptions) -> CorpusReport {
    let all = loaded(options);
    let entries = all
        .iter()
        .map(|l| {
            let v = hhdim_verdict_for_algebra(&l.base, VerdictOptions { extend: true }).verdict;
            let h = v.hypotheses.as_ref().expect("extended verdict records hypotheses");
            EntrySummary {
                name: l.name.clone(),
                dim: l.base.dim(),
                extension_dim: l.ext.t().dim(),
                local: h.local,
                selfinjective: h.selfinjective.is_some(),
                graded: h.graded,
                conclusion: v.conclusion,
                certificate: v.certificate.as_ref().map(|c| match c {
                    Certificate::TruncatedCycle(_) => "truncated_cycle",
                    Certificate::CartanDeterminant { .. } => "cartan_determinant",
                }),
            }
        })
        .collect();
    let checks: Vec<CheckOutcome> = CRITERIA
        .iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let (passed, detail) = match f(&all) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                criterion: i + 1,
                name,
                passed,
                detail,
            }
        })
        .collect();
    CorpusReport {
        all_passed: checks.iter().all(|c| c.passed),
        entries,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_build() {
        for e in ENTRIES {
            let a = load(e.name);
            assert!(a.dim() >= 1, "{}", e.name);
        }
        assert_eq!(load("five_vertex_graded").dim(), 13);
        assert!(entry("dual_numbers.quiver").is_some());
        assert!(entry("missing").is_none());
    }

    #[test]
    fn corpus_passes() {
        let r = run_corpus(&CorpusOptions::default());
        assert!(r.all_passed, "{:?}", r.first_failure());
        assert_eq!(r.checks.len(), 9);
        let tt = r.entries.iter().find(|e| e.name == "T(dual_numbers)").unwrap();
        assert_eq!(tt.certificate, Some("truncated_cycle"));
        assert!(tt.selfinjective);
    }

    #[test]
    fn planted_constant_fails_the_corpus() {
        let xy = load("local_xy");
        let r = run_corpus(&CorpusOptions {
            corruption: Some(Corruption {
                entry: "local_xy".into(),
                left: 1,
                right: 2,
                value: vec![(1, xy.field().one())],
            }),
        });
        assert!(!r.all_passed);
        let fail = r.checks.iter().find(|c| c.criterion == 8).unwrap();
        assert!(!fail.passed);
        assert!(fail.detail.contains("associativity"), "{}", fail.detail);
    }
}
