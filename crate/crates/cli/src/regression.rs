//! The worked examples as a pass/fail matrix.
//!
//! Each case recomputes the published values and compares them with the
//! expected ones. A row whose computation hit a budget limit is reported as
//! inconclusive instead of failed.

use std::collections::BTreeSet;
use std::fmt::{Display, Write as _};

use factorum_core::catenary::{catenary, check_length_relations, semigroup_catenary, Degree, Variant};
use factorum_core::distance::{rigid_distance, rigid_distance_oracle, sequence_distance, verify_axioms, DistanceKind};
use factorum_core::divisibility::{atom_sweep, is_almost_prime_like, omega_nonunits, omega_semigroup, valuation_set};
use factorum_core::factorization::{length_profile, permutable_factorizations, rigid_factorizations};
use factorum_core::matrix::{
    delta_map, full_left_divisors, snf, tri_is_atom, tri_left_divisors, verify_transfer_properties,
    FullMatrixSemigroup, IntMatrix, PositiveVectors, TriAtom, TriangularSemigroup,
};
use factorum_core::presentation::parse_presentation;
use factorum_core::transfer::{check_exwt, length_map, length_obstructions};
use factorum_core::zero_sum::{
    block_catenary, classify, davenport, maximal_order_bound, FiniteAbelianGroup, OrderClass, DEFAULT_GROUP_CAP,
};
use factorum_core::{Certification, ExplorationBudget, Presentation, PresentedSemigroup, Semigroup, Word};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde::Serialize;

const T_PRES: &str = include_str!("../../../presentations/T.pres");
const ABA_B_PRES: &str = include_str!("../../../presentations/aba_b.pres");
const OMEGA_PRES: &str = include_str!("../../../presentations/omega_differs.pres");
const WEIRD_PRES: &str = include_str!("../../../presentations/weirdprimes.pres");
const BRAID_PRES: &str = include_str!("../../../presentations/braid.pres");
const LENGTH_PRES: &str = include_str!("../../../presentations/length.pres");
const ABC_DE_PRES: &str = include_str!("../../../presentations/abc_de.pres");

const BALL_SIZE: usize = 1_000_000;
const SEED: u64 = 0x5eed;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Inconclusive,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Inconclusive => "inconclusive",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub certification: Certification,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: &'static str,
    pub criterion: usize,
    pub title: &'static str,
    pub rows: Vec<CheckRow>,
}

impl CaseResult {
    pub fn status(&self) -> Status {
        self.rows.iter().map(|r| r.status).max().unwrap_or(Status::Pass)
    }
}

/// Budget overrides applied to every presentation case.
#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub ball_len: Option<usize>,
    pub ball_size: Option<usize>,
}

type Rows = Vec<CheckRow>;
type CaseFn = fn(&Options) -> Result<Rows, String>;

pub struct Case {
    pub id: &'static str,
    pub criterion: usize,
    pub title: &'static str,
    run: CaseFn,
}

pub const CASES: &[Case] = &[
    Case {
        id: "abc-cb",
        criterion: 1,
        title: "<a,b,c | abc=cb>",
        run: abc_cb,
    },
    Case {
        id: "aba-b",
        criterion: 2,
        title: "<a,b | aba=b>",
        run: aba_b,
    },
    Case {
        id: "anbn",
        criterion: 3,
        title: "<a,b | a^n b^n = b^n a^n>, n = 2, 3",
        run: anbn,
    },
    Case {
        id: "omega-differs",
        criterion: 4,
        title: "<a,b,c,d,e | ab=cd, cede=ba>",
        run: omega_differs,
    },
    Case {
        id: "bac-n",
        criterion: 5,
        title: "<a,b,c | b a^(n-1) = a^(n-1) c>, n = 2, 3, 4",
        run: bac_n,
    },
    Case {
        id: "amb",
        criterion: 6,
        title: "<a,b | ab = b a^(n-1)>, n = 3, 4",
        run: amb,
    },
    Case {
        id: "weirdprimes",
        criterion: 7,
        title: "<a,b,c | aba = b a^3 b c>",
        run: weirdprimes,
    },
    Case {
        id: "aba-bab",
        criterion: 8,
        title: "<a,b | aba=bab>",
        run: aba_bab,
    },
    Case {
        id: "length",
        criterion: 9,
        title: "<a,b,c,d | ab=cd>",
        run: length_case,
    },
    Case {
        id: "abc-de",
        criterion: 10,
        title: "<a,b,c,d,e | abc=de>",
        run: abc_de,
    },
    Case {
        id: "zero-sum",
        criterion: 11,
        title: "monoids of zero-sum sequences",
        run: zero_sum,
    },
    Case {
        id: "triangular",
        criterion: 12,
        title: "T_2(Z) non-zero-divisors",
        run: triangular,
    },
    Case {
        id: "full-matrix",
        criterion: 13,
        title: "M_2(Z) non-zero-divisors",
        run: full_matrix,
    },
    Case {
        id: "properties",
        criterion: 14,
        title: "distance and catenary property suites",
        run: properties,
    },
];

pub fn case_ids() -> Vec<&'static str> {
    CASES.iter().map(|c| c.id).collect()
}

pub fn find(id: &str) -> Option<&'static Case> {
    CASES.iter().find(|c| c.id == id)
}

pub fn run_case(case: &Case, opts: &Options) -> CaseResult {
    let rows = (case.run)(opts).unwrap_or_else(|e| {
        vec![CheckRow {
            name: "setup".into(),
            expected: "runs".into(),
            computed: format!("error: {e}"),
            certification: Certification::Unknown,
            status: Status::Inconclusive,
        }]
    });
    CaseResult {
        id: case.id,
        criterion: case.criterion,
        title: case.title,
        rows,
    }
}

/// Runs the selected cases (all when `filter` is empty).
pub fn run(filter: &[String], opts: &Options) -> Result<Vec<CaseResult>, String> {
    for id in filter {
        if find(id).is_none() {
            return Err(format!("unknown case `{id}` (known: {})", case_ids().join(", ")));
        }
    }
    Ok(CASES
        .iter()
        .filter(|c| filter.is_empty() || filter.iter().any(|f| f == c.id))
        .map(|c| run_case(c, opts))
        .collect())
}

/// 0 when everything passed, 1 on any mismatch, 2 when only budget limits
/// stood in the way.
pub fn exit_code(results: &[CaseResult]) -> i32 {
    match results.iter().map(CaseResult::status).max() {
        Some(Status::Fail) => 1,
        Some(Status::Inconclusive) => 2,
        _ => 0,
    }
}

pub fn render_table(results: &[CaseResult]) -> String {
    let mut s = String::new();
    for c in results {
        let _ = writeln!(s, "[{}] {} ({}): {}", c.criterion, c.id, c.title, c.status().as_str());
        for r in &c.rows {
            let _ = writeln!(
                s,
                "    {:<12} {:<56} expected {:<18} computed {:<18} {}",
                r.status.as_str(),
                r.name,
                r.expected,
                r.computed,
                r.certification.as_str()
            );
        }
    }
    s
}

// ---------------------------------------------------------------------------
// row helpers

fn certification(exact: bool) -> Certification {
    if exact {
        Certification::Exact
    } else {
        Certification::LowerBound
    }
}

/// Exact comparison. A mismatch counts as a failure only if the computation
/// was complete.
fn eq_row<T: PartialEq + Display>(name: impl Into<String>, expected: T, computed: T, exact: bool) -> CheckRow {
    let status = if !exact {
        Status::Inconclusive
    } else if expected == computed {
        Status::Pass
    } else {
        Status::Fail
    };
    CheckRow {
        name: name.into(),
        expected: expected.to_string(),
        computed: computed.to_string(),
        certification: certification(exact),
        status,
    }
}

/// Lower bound claims: anything found is a genuine witness, so reaching the
/// bound passes regardless of certification.
fn at_least_row(name: impl Into<String>, bound: u32, computed: u32, exact: bool) -> CheckRow {
    let status = if computed >= bound {
        Status::Pass
    } else if exact {
        Status::Fail
    } else {
        Status::Inconclusive
    };
    CheckRow {
        name: name.into(),
        expected: format!(">= {bound}"),
        computed: computed.to_string(),
        certification: certification(exact),
        status,
    }
}

/// A yes/no property checked on a finite sample; the sample itself is the
/// scope, so the row is exact when no search inside it was truncated.
fn holds_row(name: impl Into<String>, detail: impl Into<String>, holds: bool, exact: bool) -> CheckRow {
    let detail = detail.into();
    let status = if holds {
        Status::Pass
    } else if exact {
        Status::Fail
    } else {
        Status::Inconclusive
    };
    CheckRow {
        name: name.into(),
        expected: "holds".into(),
        computed: if holds { "holds".into() } else { detail },
        certification: certification(exact),
        status,
    }
}

fn set_string<T: Display>(xs: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = xs.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn ratio_string(p: u64, q: u64) -> String {
    let (mut a, mut b) = (p, q);
    while b != 0 {
        (a, b) = (b, a % b);
    }
    format!("{}/{}", p / a, q / a)
}

fn degree(d: Degree) -> String {
    d.to_string()
}

// ---------------------------------------------------------------------------
// presentations

fn err(e: impl Display) -> String {
    e.to_string()
}

fn budget(opts: &Options, ball_len: usize) -> Result<ExplorationBudget, String> {
    ExplorationBudget::new(opts.ball_len.unwrap_or(ball_len), opts.ball_size.unwrap_or(BALL_SIZE)).map_err(err)
}

fn handle_from(
    p: Presentation,
    opts: &Options,
    ball_len: usize,
    enum_len: usize,
) -> Result<PresentedSemigroup, String> {
    Ok(PresentedSemigroup::with_budget(p, budget(opts, ball_len)?)
        .map_err(err)?
        .with_enumeration_length(enum_len))
}

fn shipped(text: &str, opts: &Options, ball_len: usize, enum_len: usize) -> Result<PresentedSemigroup, String> {
    handle_from(parse_presentation(text).map_err(err)?, opts, ball_len, enum_len)
}

fn family(
    gens: &[&str],
    rels: &[(String, String)],
    opts: &Options,
    ball_len: usize,
    enum_len: usize,
) -> Result<PresentedSemigroup, String> {
    let rels: Vec<(&str, &str)> = rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
    handle_from(Presentation::new(gens, &rels).map_err(err)?, opts, ball_len, enum_len)
}

fn power(g: &str, k: usize) -> String {
    vec![g; k].join(" ")
}

fn words(h: &PresentedSemigroup, texts: &[&str]) -> Result<Vec<Word>, String> {
    texts.iter().map(|t| h.word(t).map_err(err)).collect()
}

// ---------------------------------------------------------------------------
// criteria 1-10

fn abc_cb(opts: &Options) -> Result<Rows, String> {
    let h = shipped(T_PRES, opts, 12, 6)?;
    let w = words(&h, &["a b c", "a", "b", "c"])?;
    let (abc, a, b, c) = (&w[0], &w[1], &w[2], &w[3]);
    let l = length_profile(&h, abc);
    let cat = catenary(&h, abc, DistanceKind::Permutable);
    let d = sequence_distance(
        &h,
        DistanceKind::Permutable,
        &[a.clone(), b.clone(), c.clone()],
        &[c.clone(), b.clone()],
    );
    Ok(vec![
        eq_row("L(abc)", "{2, 3}".into(), set_string(&l.value.lengths), l.exact),
        eq_row("Delta(abc)", "{1}".into(), set_string(&l.value.delta), l.exact),
        eq_row("c_p(abc)", "1".to_string(), degree(cat.value), cat.exact),
        eq_row("d_p([a,b,c],[c,b])", 1, d, true),
    ])
}

fn aba_b(opts: &Options) -> Result<Rows, String> {
    let h = shipped(ABA_B_PRES, opts, 12, 4)?;
    let w = words(&h, &["a", "b"])?;
    let z = [w[0].clone(), w[1].clone(), w[0].clone()];
    let zp = [w[1].clone()];
    let dp = rigid_distance(&z, &zp).cost;
    let oracle = rigid_distance_oracle(&z, &zp).map_err(err)?;
    Ok(vec![
        eq_row("d*([a,b,a],[b]) (alignment DP)", 2, dp, true),
        eq_row("d*([a,b,a],[b]) (exhaustive)", 2, oracle, true),
    ])
}

fn anbn(opts: &Options) -> Result<Rows, String> {
    let mut rows = Vec::new();
    for n in [2usize, 3] {
        let lhs = format!("{} {}", power("a", n), power("b", n));
        let rhs = format!("{} {}", power("b", n), power("a", n));
        let len = 2 * n + 4;
        let h = family(&["a", "b"], &[(lhs.clone(), rhs)], opts, len, len)?;
        let s = semigroup_catenary(&h, DistanceKind::Permutable, Variant::Plain);
        rows.push(eq_row(
            format!("n={n}: sup c_p over length <= {len}"),
            "0".to_string(),
            degree(s.value),
            s.scope_exact,
        ));
        let w = h.word(&lhs).map_err(err)?;
        let r = catenary(&h, &w, DistanceKind::Rigid);
        rows.push(eq_row(
            format!("n={n}: c*(a^n b^n)"),
            (2 * n).to_string(),
            degree(r.value),
            r.exact,
        ));
    }
    Ok(rows)
}

fn omega_differs(opts: &Options) -> Result<Rows, String> {
    let h = shipped(OMEGA_PRES, opts, 12, 6)?;
    let w = words(&h, &["a", "b a"])?;
    let (a, ba) = (&w[0], &w[1]);
    let (value, _, exact) = omega_semigroup(&h, a);
    let prime = omega_nonunits(&h, ba, a, 4);
    let expected = vec!["c e".to_string(), "d".into(), "e".into()];
    let has_witness = prime.worst.iter().any(|w| {
        let mut d = w.decomposition.clone();
        d.sort();
        d == expected
    });
    Ok(vec![
        eq_row("omega_p(S,a) over products of <= 6 atoms", 2, value, exact),
        at_least_row("omega'_p(S,a)", 3, prime.value, prime.exact),
        holds_row(
            "omega'_p witness (ce, d, e) of ba",
            format!("{:?}", prime.worst.iter().map(|w| &w.decomposition).collect::<Vec<_>>()),
            has_witness,
            prime.exact,
        ),
    ])
}

fn bac_n(opts: &Options) -> Result<Rows, String> {
    let mut rows = Vec::new();
    for n in [2usize, 3, 4] {
        let lhs = format!("b {}", power("a", n - 1));
        let rhs = format!("{} c", power("a", n - 1));
        let len = 3 * n + 3;
        let h = family(&["a", "b", "c"], &[(lhs, rhs)], opts, len, len)?;
        let atoms = words(&h, &["a", "b", "c"])?;
        let s = atom_sweep(&h, &atoms);
        let ex = s.scope_exact;
        for (q, t, o) in [("a", 0, 1), ("b", 1, n as u32), ("c", 1, n as u32)] {
            let r = s.atoms.iter().find(|x| x.atom == q).ok_or("atom missing from sweep")?;
            rows.push(eq_row(format!("n={n}: t_p(S,{q})"), t, r.tame, ex));
            rows.push(eq_row(format!("n={n}: omega_p(S,{q})"), o, r.omega, ex));
        }
    }
    Ok(rows)
}

fn amb(opts: &Options) -> Result<Rows, String> {
    let mut rows = Vec::new();
    for n in [3usize, 4] {
        for m in [1usize, 2, 3] {
            // the class of a^j b^k reaches length j(n-1)^k + k
            let enum_len = 6;
            let ball_len = (n - 1).pow(enum_len as u32 - 1) + enum_len;
            let h = family(
                &["a", "b"],
                &[("a b".into(), format!("b {}", power("a", n - 1)))],
                opts,
                ball_len,
                enum_len,
            )?;
            let x = h.word(&format!("{} b", power("a", m))).map_err(err)?;
            let l = length_profile(&h, &x);
            let expected: BTreeSet<usize> = (0..=m).map(|k| m + 1 + k * (n - 2)).collect();
            let tag = format!("n={n} m={m}:");
            rows.push(eq_row(
                format!("{tag} L(a^m b)"),
                set_string(&expected),
                set_string(&l.value.lengths),
                l.exact,
            ));
            rows.push(eq_row(
                format!("{tag} sup L"),
                (m * (n - 1) + 1).to_string(),
                l.value.max().map_or("-".into(), |v| v.to_string()),
                l.exact,
            ));
            rows.push(eq_row(
                format!("{tag} rho(a^m b)"),
                ratio_string((m * (n - 1) + 1) as u64, (m + 1) as u64),
                l.value.elasticity_string(),
                l.exact,
            ));
            let c = catenary(&h, &x, DistanceKind::Permutable);
            rows.push(eq_row(
                format!("{tag} c_p(a^m b)"),
                (n - 2).to_string(),
                degree(c.value),
                c.exact,
            ));
            let (value, _, exact) = omega_semigroup(&h, &x);
            rows.push(eq_row(
                format!("{tag} omega_p(S,a^m b), length <= {enum_len}"),
                (m + 1) as u32,
                value,
                exact,
            ));
        }
    }
    Ok(rows)
}

fn weirdprimes(opts: &Options) -> Result<Rows, String> {
    let h = shipped(WEIRD_PRES, opts, 60, 10)?;
    let w = words(&h, &["a", "b", "c", "a b a"])?;
    let mut rows = Vec::new();
    for (q, name) in [(&w[0], "a"), (&w[1], "b")] {
        let r = is_almost_prime_like(&h, q);
        rows.push(eq_row(
            format!("{name} almost prime-like up to length 10"),
            "no counterexample".to_string(),
            r.counterexample
                .map_or("no counterexample".into(), |c| format!("counterexample {}", c.0)),
            r.scope_exact,
        ));
    }
    let rc = is_almost_prime_like(&h, &w[2]);
    let found = rc.counterexample.as_ref().map(|c| c.0.clone());
    rows.push(match found {
        Some(e) => eq_row("c: first counterexample", "a b a".to_string(), e, true),
        None => eq_row(
            "c: first counterexample",
            "a b a".to_string(),
            "none".into(),
            rc.scope_exact,
        ),
    });
    for (q, name, expected) in [(&w[0], "a", "{2, 3}"), (&w[1], "b", "{1, 2}")] {
        match valuation_set(&h, q, &w[3]) {
            Ok(v) => rows.push(eq_row(
                format!("V_{name}(aba)"),
                expected.to_string(),
                set_string(&v.value),
                v.exact,
            )),
            Err(e) => rows.push(eq_row(
                format!("V_{name}(aba)"),
                expected.to_string(),
                e.to_string(),
                true,
            )),
        }
    }
    Ok(rows)
}

fn aba_bab(opts: &Options) -> Result<Rows, String> {
    let h = shipped(BRAID_PRES, opts, 8, 8)?;
    let atoms = words(&h, &["a", "b"])?;
    let s = atom_sweep(&h, &atoms);
    let mut rows = Vec::new();
    for r in &s.atoms {
        rows.push(eq_row(
            format!("t_p(S,{}) over length <= 8", r.atom),
            0,
            r.tame,
            s.scope_exact,
        ));
    }
    let aba = h.word("a b a").map_err(err)?;
    let zp = permutable_factorizations(&h, &aba);
    rows.push(at_least_row("|Z_p(aba)|", 2, zp.value.len() as u32, zp.exact));
    Ok(rows)
}

fn length_case(opts: &Options) -> Result<Rows, String> {
    let h = shipped(LENGTH_PRES, opts, 8, 4)?;
    let r = check_exwt(&h);
    let pair = r
        .counterexamples
        .iter()
        .any(|c| (c.a == "a b" && c.b == "d c") || (c.a == "d c" && c.b == "a b"));
    let found: Vec<String> = r
        .counterexamples
        .iter()
        .map(|c| format!("({}, {})", c.a, c.b))
        .collect();
    let mut rows = vec![holds_row(
        "check_exwt counterexample (ab, dc)",
        format!("found {}", set_string(&found)),
        pair,
        r.exact,
    )];
    match length_map(&h) {
        Some(lm) => {
            rows.push(eq_row("length map (T1)", true, lm.check.t1, lm.check.exact));
            rows.push(eq_row(
                "length map (T2)",
                true,
                lm.check.t2 == Some(true),
                lm.check.exact,
            ));
        }
        None => rows.push(eq_row("length map exists", "yes".to_string(), "no".into(), true)),
    }
    Ok(rows)
}

fn abc_de(opts: &Options) -> Result<Rows, String> {
    let h = shipped(ABC_DE_PRES, opts, 10, 3)?;
    let w = words(&h, &["a b c", "b a c"])?;
    let la = length_profile(&h, &w[0]);
    let lb = length_profile(&h, &w[1]);
    let obs = length_obstructions(&h);
    let fires = obs.value.iter().any(|o| {
        let pair = [o.a.as_str(), o.b.as_str()];
        pair.contains(&"b a c") && (pair.contains(&"d e") || pair.contains(&"a b c"))
    });
    Ok(vec![
        eq_row("L(abc)", "{2, 3}".to_string(), set_string(&la.value.lengths), la.exact),
        eq_row("L(bac)", "{3}".to_string(), set_string(&lb.value.lengths), lb.exact),
        holds_row(
            "no-weak-transfer verdict (abc vs bac)",
            format!("{} obstructions", obs.value.len()),
            fires,
            obs.exact,
        ),
    ])
}

// ---------------------------------------------------------------------------
// criterion 11

/// D(G) as one plus the longest zero-sum free sequence, found by listing
/// sequences and all their subsums. Independent of the atom enumeration.
fn davenport_oracle(g: &FiniteAbelianGroup) -> usize {
    let order = g.order() as usize;
    let mut len = 1;
    loop {
        let mut seq = vec![0usize; len];
        let mut any_free = false;
        'outer: loop {
            if seq.iter().all(|&x| x != 0) && zero_sum_free(g, &seq) {
                any_free = true;
                break;
            }
            // next non-decreasing sequence
            let mut i = len;
            while i > 0 {
                i -= 1;
                if seq[i] + 1 < order {
                    let v = seq[i] + 1;
                    for x in &mut seq[i..] {
                        *x = v;
                    }
                    continue 'outer;
                }
            }
            break;
        }
        if !any_free {
            return len;
        }
        len += 1;
    }
}

fn zero_sum_free(g: &FiniteAbelianGroup, seq: &[usize]) -> bool {
    (1u32..1 << seq.len()).all(|mask| {
        let s = (0..seq.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(0, |acc, i| g.add(acc, seq[i]));
        s != 0
    })
}

fn zero_sum(_opts: &Options) -> Result<Rows, String> {
    let mut rows = Vec::new();
    let cap = DEFAULT_GROUP_CAP;
    for n in 1..=8u32 {
        let g = FiniteAbelianGroup::cyclic(n).map_err(err)?;
        rows.push(eq_row(
            format!("D(C{n})"),
            n as usize,
            davenport(&g, None, cap).map_err(err)?,
            true,
        ));
        rows.push(eq_row(
            format!("D(C{n}) oracle"),
            n as usize,
            davenport_oracle(&g),
            true,
        ));
    }
    for (orders, d) in [(&[2u32, 2][..], 3usize), (&[3, 3][..], 5)] {
        let g = FiniteAbelianGroup::new(orders).map_err(err)?;
        rows.push(eq_row(
            format!("D({g})"),
            d,
            davenport(&g, None, cap).map_err(err)?,
            true,
        ));
        rows.push(eq_row(format!("D({g}) oracle"), d, davenport_oracle(&g), true));
    }
    for orders in [&[3u32][..], &[2, 2][..]] {
        let g = FiniteAbelianGroup::new(orders).map_err(err)?;
        let r = block_catenary(&g, None, None, cap).map_err(err)?;
        let ex = r.catenary.scope_exact;
        rows.push(eq_row(
            format!("c(B({g}))"),
            "3".to_string(),
            degree(r.catenary.value),
            ex,
        ));
        let witness = r.catenary.attained_at.as_ref().map(|(e, c)| (e.clone(), c.value));
        rows.push(holds_row(
            format!("c(B({g})) witness element"),
            "no witness",
            witness.as_ref().is_some_and(|(_, v)| *v == Degree::Finite(3)),
            ex,
        ));
        rows.push(eq_row(
            format!("classification of {g}"),
            format!("{:?}", Some(OrderClass::Three)),
            format!("{:?}", classify(&g)),
            true,
        ));
    }
    let trivial = maximal_order_bound(&FiniteAbelianGroup::new(&[]).map_err(err)?, cap).map_err(err)?;
    rows.push(eq_row("maximal_order_bound(trivial)", 2, trivial.bound, true));
    let c2 = maximal_order_bound(&FiniteAbelianGroup::cyclic(2).map_err(err)?, cap).map_err(err)?;
    rows.push(eq_row(
        "maximal_order_bound(C2) case",
        format!("{:?}", Some(OrderClass::AtMostTwo)),
        format!("{:?}", c2.classification),
        true,
    ));
    rows.push(holds_row(
        "maximal_order_bound(C2) <= 2",
        format!("bound {}", c2.bound),
        c2.bound <= 2,
        true,
    ));
    Ok(rows)
}

// ---------------------------------------------------------------------------
// criterion 12

/// Atom straight from the definition: a non-unit all of whose left atom
/// divisors leave a unit quotient.
fn tri_atom_by_divisors(a: &IntMatrix) -> Result<bool, String> {
    if a.abs_det() == 1 {
        return Ok(false);
    }
    let divs = tri_left_divisors(a, u64::MAX).map_err(err)?;
    Ok(!divs.is_empty() && divs.iter().all(|(_, q)| q.abs_det() == 1))
}

fn random_triangular(rng: &mut StdRng, n: usize, bound: i64) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        for j in i..n {
            let mut v = rng.gen_range(-bound..=bound);
            if i == j {
                while v == 0 {
                    v = rng.gen_range(-bound..=bound);
                }
            }
            m.set(i, j, v);
        }
    }
    m
}

fn triangular(_opts: &Options) -> Result<Rows, String> {
    let h = TriangularSemigroup::new(2, 16, 64);
    let samples: Vec<IntMatrix> = h.elements().map(|e| e.value).collect();
    let mut worst: Option<String> = None;
    let mut exact = true;
    for a in &samples {
        let zs = rigid_factorizations(&h, a);
        exact &= zs.exact;
        let first = zs.value.first().map(|z| sorted_keys(&h, &z.atoms));
        for z in &zs.value {
            if Some(sorted_keys(&h, &z.atoms)) != first {
                worst.get_or_insert_with(|| format!("two permutable classes for [{a}]"));
            }
            for zp in &zs.value {
                if sequence_distance(&h, DistanceKind::Permutable, &z.atoms, &zp.atoms) != 0 {
                    worst.get_or_insert_with(|| format!("d_p > 0 inside Z*([{a}])"));
                }
            }
        }
    }
    let mut rows = vec![holds_row(
        format!("d_p = 0 on all rigid factorizations ({} matrices)", samples.len()),
        worst.clone().unwrap_or_default(),
        worst.is_none(),
        exact,
    )];

    let t = PositiveVectors { n: 2, bound: 64 };
    let targets: Vec<Vec<u64>> = t
        .elements()
        .map(|e| e.value)
        .filter(|v| v.iter().product::<u64>() <= 64)
        .collect();
    let section = |v: &Vec<u64>| Some(IntMatrix::diagonal(&v.iter().map(|&x| x as i64).collect::<Vec<_>>()));
    let r = verify_transfer_properties(&h, &t, &delta_map, &samples, &targets, &section, false);
    let first = r.counterexamples.first().cloned().unwrap_or_default();
    rows.push(holds_row("delta (T1)", first.clone(), r.t1, r.exact));
    rows.push(holds_row(
        "delta (WT2)",
        first.clone(),
        r.wt2 && r.atoms_to_atoms,
        r.exact,
    ));
    rows.push(holds_row("delta isoatomic", first, r.isoatomic, r.exact));

    let mut rng = StdRng::seed_from_u64(SEED);
    let mut disagreement = None;
    for i in 0..1000 {
        let n = if i % 2 == 0 { 2 } else { 3 };
        let a = random_triangular(&mut rng, n, 16);
        let fast = matches!(tri_is_atom(&a).map_err(err)?, TriAtom::Yes(_));
        let slow = tri_atom_by_divisors(&a)?;
        if fast != slow && disagreement.is_none() {
            disagreement = Some(format!("[{a}]: diagonal test {fast}, divisors {slow}"));
        }
    }
    rows.push(holds_row(
        "tri_is_atom = divisor definition on 1000 random matrices",
        disagreement.clone().unwrap_or_default(),
        disagreement.is_none(),
        true,
    ));
    Ok(rows)
}

fn sorted_keys<S: Semigroup>(h: &S, atoms: &[S::Elem]) -> Vec<S::Key> {
    let mut k: Vec<S::Key> = atoms.iter().map(|u| h.associate_key(u)).collect();
    k.sort();
    k
}

// ---------------------------------------------------------------------------
// criterion 13

/// Ω(n) by trial division.
fn big_omega(mut n: u64) -> usize {
    let mut count = 0;
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            n /= p;
            count += 1;
        }
        p += 1;
    }
    count + usize::from(n > 1)
}

fn random_matrix(rng: &mut StdRng, n: usize, bound: i64) -> IntMatrix {
    loop {
        let entries: Vec<i64> = (0..n * n).map(|_| rng.gen_range(-bound..=bound)).collect();
        let m = IntMatrix::new(n, entries).expect("square");
        if m.det() != 0 {
            return m;
        }
    }
}

fn full_matrix(_opts: &Options) -> Result<Rows, String> {
    let mut rng = StdRng::seed_from_u64(SEED + 1);
    let mut snf_problem = None;
    let mut samples = Vec::new();
    for _ in 0..1000 {
        let a = random_matrix(&mut rng, 2, 12);
        let r = snf(&a).map_err(err)?;
        let d = r.c.diagonal_entries();
        let diag = (0..2).all(|i| (0..2).all(|j| i == j || r.c.get(i, j) == 0));
        let divides = r.descending && d[0] % d[1] == 0;
        let ok = r.u.mul(&r.c).mul(&r.v) == a && r.u.abs_det() == 1 && r.v.abs_det() == 1 && diag && divides;
        if !ok && snf_problem.is_none() {
            snf_problem = Some(format!("[{a}]"));
        }
        samples.push(a);
    }
    let mut rows = vec![holds_row(
        "A = U C V, unimodular, descending, 1000 random",
        snf_problem.clone().unwrap_or_default(),
        snf_problem.is_none(),
        true,
    )];

    let h = FullMatrixSemigroup::new(2, 4, 60);
    let mut small: Vec<IntMatrix> = h.elements().map(|e| e.value).collect();
    small.extend(samples.iter().filter(|a| (2..=60).contains(&a.abs_det())).cloned());
    let mut length_problem = None;
    let mut atom_problem = None;
    let mut exact = true;
    for a in &small {
        let l = length_profile(&h, a);
        exact &= l.exact;
        let expected = BTreeSet::from([big_omega(a.abs_det())]);
        if l.value.lengths != expected && length_problem.is_none() {
            length_problem = Some(format!("[{a}]: {}", set_string(&l.value.lengths)));
        }
        let prime = big_omega(a.abs_det()) == 1;
        let by_snf = h.is_atom(a).value;
        let divs = full_left_divisors(a, 60).map_err(err)?;
        let by_divisors = !divs.is_empty() && divs.iter().all(|(_, q)| q.abs_det() == 1);
        if (by_snf != prime || by_divisors != prime) && atom_problem.is_none() {
            atom_problem = Some(format!("[{a}]: snf {by_snf}, divisors {by_divisors}, prime {prime}"));
        }
    }
    rows.push(holds_row(
        format!("L(A) = {{Omega(|det A|)}} on {} matrices with |det| <= 60", small.len()),
        length_problem.clone().unwrap_or_default(),
        length_problem.is_none(),
        exact,
    ));
    rows.push(holds_row(
        "atom iff |det| prime (SNF and divisor routes)",
        atom_problem.clone().unwrap_or_default(),
        atom_problem.is_none(),
        true,
    ));
    Ok(rows)
}

// ---------------------------------------------------------------------------
// criterion 14

/// The presentations of criteria 1-8 with small scopes for the property
/// suites.
fn property_handles(opts: &Options) -> Result<Vec<(String, PresentedSemigroup)>, String> {
    let mut out = vec![
        ("abc=cb".to_string(), shipped(T_PRES, opts, 12, 7)?),
        ("aba=b".into(), shipped(ABA_B_PRES, opts, 11, 5)?),
        ("omega-differs".into(), shipped(OMEGA_PRES, opts, 12, 5)?),
        ("weirdprimes".into(), shipped(WEIRD_PRES, opts, 40, 7)?),
        ("aba=bab".into(), shipped(BRAID_PRES, opts, 9, 9)?),
    ];
    for n in [2usize, 3] {
        let lhs = format!("{} {}", power("a", n), power("b", n));
        let rhs = format!("{} {}", power("b", n), power("a", n));
        out.push((
            format!("a^{n}b^{n}"),
            family(&["a", "b"], &[(lhs, rhs)], opts, 2 * n + 4, 2 * n + 4)?,
        ));
    }
    for n in [2usize, 3, 4] {
        let lhs = format!("b {}", power("a", n - 1));
        let rhs = format!("{} c", power("a", n - 1));
        out.push((
            format!("bac n={n}"),
            family(&["a", "b", "c"], &[(lhs, rhs)], opts, n + 5, n + 5)?,
        ));
    }
    for n in [3usize, 4] {
        let rhs = format!("b {}", power("a", n - 1));
        out.push((
            format!("ab=ba^{}", n - 1),
            family(&["a", "b"], &[("a b".into(), rhs)], opts, (n - 1).pow(3) + 4, 4)?,
        ));
    }
    Ok(out)
}

fn properties(opts: &Options) -> Result<Rows, String> {
    let handles = property_handles(opts)?;
    let mut axiom_problem: Vec<(DistanceKind, Option<String>)> = DistanceKind::ALL.iter().map(|k| (*k, None)).collect();
    let mut chain_problem = None;
    let mut relation_problem = None;
    let mut pool: Vec<(String, Vec<Word>, Vec<Word>)> = Vec::new();
    let (mut elements, mut pairs) = (0usize, 0usize);
    for (name, h) in &handles {
        let atoms = h.enumerate_atoms().value;
        let samples: Vec<Word> = h.enumerate_elements().map(|e| e.value).collect();
        let extensions: Vec<Vec<Word>> = atoms.iter().map(|u| vec![u.clone()]).collect();
        for kind in DistanceKind::ALL {
            let r = verify_axioms(h, kind, &samples, &extensions, 12);
            if let Some(v) = r.violation {
                axiom_problem
                    .iter_mut()
                    .find(|(k, _)| *k == kind)
                    .expect("all kinds listed")
                    .1
                    .get_or_insert(format!("{name}: {v}"));
            }
        }
        for a in &samples {
            elements += 1;
            let zs = rigid_factorizations(h, a);
            for (i, z) in zs.value.iter().enumerate() {
                for zp in &zs.value[i + 1..] {
                    pairs += 1;
                    let dl = sequence_distance(h, DistanceKind::Length, &z.atoms, &zp.atoms);
                    let dp = sequence_distance(h, DistanceKind::Permutable, &z.atoms, &zp.atoms);
                    let dr = sequence_distance(h, DistanceKind::Rigid, &z.atoms, &zp.atoms);
                    if !(dl <= dp && dp <= dr) && chain_problem.is_none() {
                        chain_problem = Some(format!("{name}: {}: {dl}, {dp}, {dr}", h.render(a)));
                    }
                    if z.len() + zp.len() <= 10 {
                        pool.push((name.clone(), z.atoms.clone(), zp.atoms.clone()));
                    }
                }
            }
            for kind in DistanceKind::ALL {
                let c = check_length_relations(h, a, kind);
                if let Some(p) = c.value {
                    if relation_problem.is_none() {
                        relation_problem = Some(format!("{name}: {} ({kind}): {p}", h.render(a)));
                    }
                }
            }
        }
    }
    let mut rows = Vec::new();
    for (kind, problem) in &axiom_problem {
        rows.push(holds_row(
            format!("(D1)-(D5) for d_{kind}"),
            problem.clone().unwrap_or_default(),
            problem.is_none(),
            true,
        ));
    }
    rows.push(holds_row(
        format!("d_len <= d_p <= d* on {pairs} pairs of {elements} elements"),
        chain_problem.clone().unwrap_or_default(),
        chain_problem.is_none(),
        true,
    ));
    rows.push(holds_row(
        "sup Delta <= c and related bounds on every explored element",
        relation_problem.clone().unwrap_or_default(),
        relation_problem.is_none(),
        true,
    ));

    let mut rng = StdRng::seed_from_u64(SEED + 2);
    let mut mismatch = None;
    let draws = if pool.is_empty() { 0 } else { 500 };
    for _ in 0..draws {
        let (name, z, zp) = pool.choose(&mut rng).expect("non-empty pool");
        let dp = rigid_distance(z, zp).cost;
        let oracle = rigid_distance_oracle(z, zp).map_err(err)?;
        if dp != oracle && mismatch.is_none() {
            mismatch = Some(format!("{name}: DP {dp}, oracle {oracle}"));
        }
    }
    rows.push(eq_row(
        "random same-product pairs drawn (length <= 10)",
        500,
        draws,
        true,
    ));
    rows.push(holds_row(
        format!("d* DP = exhaustive oracle (pool of {} pairs)", pool.len()),
        mismatch.clone().unwrap_or_default(),
        mismatch.is_none(),
        true,
    ));
    Ok(rows)
}
