//! Argument parsing and dispatch for the `factorum` binary.

use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use factorum_core::catenary::{catenary_variant, semigroup_catenary, Variant};
use factorum_core::distance::{rigid_distance, DistanceKind};
use factorum_core::divisibility::{
    is_prime_like, omega, omega_nonunits_semigroup, omega_semigroup, tame_degree, OmegaMode,
};
use factorum_core::factorization::{length_profile, permutable_factorizations, rigid_factorizations, LengthSet};
use factorum_core::matrix::{
    delta_map, snf, tri_associate_normal_form, tri_is_atom, FullMatrixSemigroup, IntMatrix, TriAtom,
    TriangularSemigroup, DEFAULT_DET_CAP,
};
use factorum_core::presentation::{parse_presentation, AtomVerdict};
use factorum_core::transfer::{abelianize, check_exwt, length_map, length_obstructions};
use factorum_core::zero_sum::{
    atoms_of_block_monoid, block_catenary, davenport, maximal_order_bound, BlockMonoid, FiniteAbelianGroup,
    DEFAULT_GROUP_CAP,
};
use factorum_core::{Certification, ExplorationBudget, PresentedSemigroup, Semigroup, Word};
use serde_json::json;

use crate::regression;
use crate::report::{render, Format, InvariantReport};

fn positive(s: &str) -> std::result::Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Run configuration: input, subcommand, budget overrides and output format.
#[derive(Debug, Parser)]
#[command(
    name = "factorum",
    version,
    about = "Factorization invariants of finitely presented semigroups, zero-sum sequences and integer matrices"
)]
pub struct RunConfig {
    /// Override the maximal word length of congruence balls.
    #[arg(long, global = true, value_parser = positive)]
    pub budget_len: Option<usize>,
    /// Override the maximal number of words in a congruence ball.
    #[arg(long, global = true, value_parser = positive)]
    pub budget_ball: Option<usize>,
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Len,
    Perm,
    Rigid,
}

impl From<KindArg> for DistanceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Len => DistanceKind::Length,
            KindArg::Perm => DistanceKind::Permutable,
            KindArg::Rigid => DistanceKind::Rigid,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariantArg {
    Plain,
    Equal,
    Adjacent,
    Monotone,
    InFibers,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Plain => Variant::Plain,
            VariantArg::Equal => Variant::Equal,
            VariantArg::Adjacent => Variant::Adjacent,
            VariantArg::Monotone => Variant::Monotone,
            VariantArg::InFibers => Variant::InFibers,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ZssAction {
    Atoms,
    Davenport,
    Catenary,
    OrderBound,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TriAction {
    Factorize,
    Atom,
    Delta,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum MatAction {
    Snf,
    Atom,
    Lengths,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse a presentation file and print it normalized.
    Parse { file: PathBuf },
    /// Check the Adyan condition (left and right graphs are forests).
    Adyan { file: PathBuf },
    /// List canonical elements up to a word length.
    Elements {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// List the atoms.
    Atoms { file: PathBuf },
    /// Rigid (or permutable) factorizations of an element.
    Factorize {
        file: PathBuf,
        #[arg(long)]
        element: String,
        #[arg(long)]
        permutable: bool,
    },
    /// Set of lengths, its distances and the elasticity.
    Lengths {
        file: PathBuf,
        #[arg(long)]
        element: String,
    },
    /// Distance between two factorizations, picked by enumeration index.
    Distance {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        element: String,
        #[arg(long)]
        z: usize,
        #[arg(long)]
        zprime: usize,
    },
    /// Catenary degree of one element, or over all explored elements.
    Catenary {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "perm")]
        kind: KindArg,
        #[arg(long, value_enum, default_value = "plain")]
        variant: VariantArg,
        #[arg(long, required_unless_present = "all")]
        element: Option<String>,
        #[arg(long, conflicts_with = "element")]
        all: bool,
        /// Enumeration length for --all.
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// ω_p(a, b), or ω_p(H, b) over explored elements when --element is absent.
    Omega {
        file: PathBuf,
        #[arg(long)]
        element: Option<String>,
        #[arg(long)]
        divisor: String,
        /// ω′_p: decompositions into arbitrary non-units.
        #[arg(long)]
        nonunits: bool,
        #[arg(long, default_value_t = 6)]
        max_factors: usize,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Permutable tame degree t_p(a, x).
    Tame {
        file: PathBuf,
        #[arg(long)]
        element: String,
        /// Atoms of the pattern, whitespace separated (e.g. "a b").
        #[arg(long)]
        pattern: String,
    },
    /// Search for a failure of (almost) prime-likeness of an atom.
    Primelike {
        file: PathBuf,
        #[arg(long)]
        atom: String,
        #[arg(long, default_value_t = 6)]
        max_len: usize,
    },
    /// Reduced abelianization as a commutative presentation.
    Abelianize { file: PathBuf },
    /// Check whether the abelianization is a weak transfer homomorphism.
    CheckWth {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// Monoids of zero-sum sequences over a finite abelian group.
    Zss {
        /// Cyclic orders, e.g. `3` or `2,2`.
        #[arg(long)]
        group: String,
        #[arg(value_enum)]
        action: ZssAction,
        #[arg(long)]
        max_len: Option<usize>,
    },
    /// Upper triangular integer matrices.
    Tri {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(value_enum)]
        action: TriAction,
        #[arg(long, default_value_t = DEFAULT_DET_CAP)]
        det_cap: u64,
    },
    /// Full integer matrices.
    Mat {
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(value_enum)]
        action: MatAction,
        #[arg(long, default_value_t = DEFAULT_DET_CAP)]
        det_cap: u64,
    },
    /// Catenary bound for a maximal order with the given class group.
    OrderBound {
        #[arg(long)]
        group: String,
    },
    /// Recompute the worked examples and compare with the expected values.
    Regression {
        #[arg(long = "case")]
        cases: Vec<String>,
    },
}

/// Text to print and the process exit status.
#[derive(Debug)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn from_reports(reports: &[InvariantReport], format: Format) -> Output {
        let complete = reports.iter().all(InvariantReport::is_exact);
        Output {
            text: render(reports, format),
            code: if complete { 0 } else { 2 },
        }
    }
}

/// Runs one subcommand. Input errors come back as `Err` (exit status 1).
pub fn run(cfg: &RunConfig) -> Result<Output> {
    let reports = match &cfg.command {
        Command::Regression { cases } => return run_regression(cfg, cases),
        Command::Zss { group, action, max_len } => zss(group, *action, *max_len)?,
        Command::OrderBound { group } => zss(group, ZssAction::OrderBound, None)?,
        Command::Tri {
            matrix,
            action,
            det_cap,
        } => tri(matrix, *action, *det_cap)?,
        Command::Mat {
            matrix,
            action,
            det_cap,
        } => mat(matrix, *action, *det_cap)?,
        other => presentation_command(cfg, other)?,
    };
    Ok(Output::from_reports(&reports, cfg.format))
}

fn run_regression(cfg: &RunConfig, cases: &[String]) -> Result<Output> {
    let opts = regression::Options {
        ball_len: cfg.budget_len,
        ball_size: cfg.budget_ball,
    };
    let results = regression::run(cases, &opts).map_err(|e| anyhow!(e))?;
    let text = match cfg.format {
        Format::Table => regression::render_table(&results),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({
                "schema": crate::report::SCHEMA,
                "invariant": "regression",
                "cases": results,
            }))?;
            s.push('\n');
            s
        }
    };
    Ok(Output {
        text,
        code: regression::exit_code(&results),
    })
}

fn load(cfg: &RunConfig, file: &Path) -> Result<PresentedSemigroup> {
    let text = std::fs::read_to_string(file).with_context(|| format!("cannot read {}", file.display()))?;
    let p = parse_presentation(&text).with_context(|| format!("in {}", file.display()))?;
    let budget = ExplorationBudget::new(
        cfg.budget_len.unwrap_or(p.budget.max_word_length),
        cfg.budget_ball.unwrap_or(p.budget.max_ball_size),
    )?;
    Ok(PresentedSemigroup::with_budget(p, budget)?)
}

fn element(h: &PresentedSemigroup, text: &str) -> Result<Word> {
    let w = h.word(text)?;
    if w.is_empty() {
        bail!("the identity has no factorizations to report");
    }
    Ok(w)
}

fn render_seq(h: &PresentedSemigroup, z: &[Word]) -> Vec<String> {
    z.iter().map(|u| h.render(u)).collect()
}

fn length_json(l: &LengthSet) -> serde_json::Value {
    json!({
        "lengths": l.lengths,
        "delta": l.delta,
        "elasticity": format!("{}/{}", l.elasticity.numer(), l.elasticity.denom()),
    })
}

fn presentation_command(cfg: &RunConfig, command: &Command) -> Result<Vec<InvariantReport>> {
    let file = match command {
        Command::Parse { file }
        | Command::Adyan { file }
        | Command::Elements { file, .. }
        | Command::Atoms { file }
        | Command::Factorize { file, .. }
        | Command::Lengths { file, .. }
        | Command::Distance { file, .. }
        | Command::Catenary { file, .. }
        | Command::Omega { file, .. }
        | Command::Tame { file, .. }
        | Command::Primelike { file, .. }
        | Command::Abelianize { file }
        | Command::CheckWth { file, .. } => file,
        _ => unreachable!("dispatched elsewhere"),
    };
    let h = load(cfg, file)?;
    let budget = *h.budget();
    let warnings = h.warnings();
    let report = match command {
        Command::Parse { .. } => InvariantReport::new("presentation", h.presentation().to_text(), Certification::Exact),
        Command::Adyan { .. } => {
            let a = h.adyan();
            let p = h.presentation();
            let edges = |g: &[(u8, u8)]| -> Vec<String> {
                g.iter()
                    .map(|&(u, v)| format!("{}-{}", p.generators[u as usize], p.generators[v as usize]))
                    .collect()
            };
            InvariantReport::new("adyan", a.is_adyan, Certification::Exact)
                .witness(json!({"left_graph": edges(&a.left_graph), "left_is_forest": a.left_is_forest}))
                .witness(json!({"right_graph": edges(&a.right_graph), "right_is_forest": a.right_is_forest}))
        }
        Command::Elements { max_len, .. } => {
            let h = load(cfg, file)?.with_enumeration_length(*max_len);
            let mut exact = true;
            let mut out = Vec::new();
            for e in h.enumerate_elements() {
                exact &= e.exact;
                out.push(h.render(&e.value));
            }
            InvariantReport::exact_if("elements", out, exact).budget_value(json!({
                "max_word_length": budget.max_word_length,
                "max_ball_size": budget.max_ball_size,
                "enumeration_length": max_len,
            }))
        }
        Command::Atoms { .. } => {
            let atoms = h.enumerate_atoms();
            let names: Vec<String> = atoms.value.iter().map(|u| h.render(u)).collect();
            let mut r = InvariantReport::exact_if("atoms", names, atoms.exact);
            for g in 0..h.presentation().generators.len() as u8 {
                if let AtomVerdict::No { left, right } = h.atom_verdict(&Word::letter(g)) {
                    r = r.witness(json!({
                        "generator": h.presentation().generators[g as usize],
                        "splits_as": [h.render(&left), h.render(&right)],
                    }));
                }
            }
            r
        }
        Command::Factorize {
            element: e, permutable, ..
        } => {
            let a = element(&h, e)?;
            if *permutable {
                let zs = permutable_factorizations(&h, &a);
                let v: Vec<Vec<String>> = zs
                    .value
                    .iter()
                    .map(|z| z.classes.iter().map(|k| h.render_key(k)).collect())
                    .collect();
                InvariantReport::exact_if("permutable-factorizations", v, zs.exact)
            } else {
                let zs = rigid_factorizations(&h, &a);
                let v: Vec<Vec<String>> = zs.value.iter().map(|z| render_seq(&h, &z.atoms)).collect();
                InvariantReport::exact_if("rigid-factorizations", v, zs.exact)
            }
        }
        Command::Lengths { element: e, .. } => {
            let a = element(&h, e)?;
            let l = length_profile(&h, &a);
            InvariantReport::exact_if("length-profile", length_json(&l.value), l.exact)
        }
        Command::Distance {
            kind,
            element: e,
            z,
            zprime,
            ..
        } => {
            let a = element(&h, e)?;
            let zs = rigid_factorizations(&h, &a);
            let count = zs.value.len();
            let pick = |i: usize| {
                zs.value
                    .get(i)
                    .ok_or_else(|| anyhow!("factorization index {i} out of range ({count} found)"))
            };
            let (x, y) = (pick(*z)?, pick(*zprime)?);
            let kind: DistanceKind = (*kind).into();
            let d = factorum_core::distance::distance(&h, kind, x, y);
            let mut r = InvariantReport::new(format!("d_{kind}"), d, Certification::Exact)
                .witness(json!({"z": render_seq(&h, &x.atoms), "zprime": render_seq(&h, &y.atoms)}));
            if kind == DistanceKind::Rigid {
                r = r.witness(json!({"alignment": rigid_distance(&x.atoms, &y.atoms)}));
            }
            r
        }
        Command::Catenary {
            kind,
            variant,
            element: e,
            all,
            max_len,
            ..
        } => {
            let (kind, variant): (DistanceKind, Variant) = ((*kind).into(), (*variant).into());
            let name = format!("catenary-{}-{}", variant.name(), kind);
            if *all {
                let h = load(cfg, file)?.with_enumeration_length(*max_len);
                let s = semigroup_catenary(&h, kind, variant);
                let mut r = InvariantReport::exact_if(name, s.value, s.scope_exact)
                    .budget_value(json!({"max_word_length": budget.max_word_length, "enumeration_length": max_len}))
                    .witness(json!({"elements": s.elements}));
                if let Some(at) = &s.attained_at {
                    r = r.witness(json!({"element": at.0, "report": at.1}));
                }
                r
            } else {
                let a = element(&h, e.as_deref().unwrap_or_default())?;
                let c = catenary_variant(&h, &a, kind, variant);
                let mut r = InvariantReport::exact_if(name, c.value, c.exact);
                if let Some(w) = &c.witness {
                    r = r.witness(w);
                }
                if let Some(p) = &c.blocking_pair {
                    r = r.witness(json!({"blocking_pair": p}));
                }
                r
            }
        }
        Command::Omega {
            element: e,
            divisor,
            nonunits,
            max_factors,
            max_len,
            ..
        } => {
            let b = element(&h, divisor)?;
            let name = if *nonunits { "omega-prime-p" } else { "omega-p" };
            match e {
                Some(e) => {
                    let a = element(&h, e)?;
                    let mode = if *nonunits {
                        OmegaMode::NonUnits
                    } else {
                        OmegaMode::Atoms
                    };
                    let o = omega(&h, &a, &b, mode, *max_factors);
                    let mut r = InvariantReport::exact_if(name, o.value, o.exact);
                    for w in &o.worst {
                        r = r.witness(w);
                    }
                    r
                }
                None => {
                    let h = load(cfg, file)?.with_enumeration_length(*max_len);
                    let (v, at, exact) = if *nonunits {
                        omega_nonunits_semigroup(&h, &b, *max_factors)
                    } else {
                        omega_semigroup(&h, &b)
                    };
                    let mut r = InvariantReport::exact_if(name, v, exact).budget_value(
                        json!({"max_word_length": budget.max_word_length, "enumeration_length": max_len}),
                    );
                    if let Some((elem, o)) = at {
                        r = r.witness(json!({"element": elem, "report": o}));
                    }
                    r
                }
            }
        }
        Command::Tame {
            element: e, pattern, ..
        } => {
            let a = element(&h, e)?;
            let keys = pattern
                .split_whitespace()
                .map(|name| {
                    let g = h
                        .presentation()
                        .generator_index(name)
                        .ok_or_else(|| anyhow!("unknown generator `{name}`"))?;
                    h.atom_letter(g).ok_or_else(|| anyhow!("`{name}` is not an atom"))
                })
                .collect::<Result<Vec<u8>>>()?;
            let t = tame_degree(&h, &a, &keys);
            let mut r = InvariantReport::exact_if("tame-p", t.value, t.exact);
            if let Some((z, zp)) = &t.witness {
                r = r.witness(json!({"z": z, "closest": zp}));
            }
            r
        }
        Command::Primelike { atom, max_len, .. } => {
            let h = load(cfg, file)?.with_enumeration_length(*max_len);
            let q = element(&h, atom)?;
            if h.is_atom(&q).value {
                let v = is_prime_like(&h, &q);
                let verdict = if !v.almost.holds_within_scope() {
                    "not almost prime-like"
                } else if v.non_singleton.is_some() {
                    "almost prime-like, not prime-like"
                } else {
                    "prime-like within scope"
                };
                // a counterexample is definitive, absence only holds within scope
                let exact = !v.almost.holds_within_scope() || v.almost.scope_exact;
                let mut r = InvariantReport::exact_if("prime-like", verdict, exact);
                if let Some(c) = &v.almost.counterexample {
                    r = r.witness(json!({"element": c.0, "with": c.1, "without": c.2}));
                }
                if let Some(n) = &v.non_singleton {
                    r = r.witness(json!({"element": n.0, "valuations": n.1}));
                }
                r
            } else {
                bail!("`{atom}` is not an atom");
            }
        }
        Command::Abelianize { .. } => {
            let ab = abelianize(h.presentation());
            let canc = ab.cancellativity_counterexample(4);
            let mut r = InvariantReport::new("abelianization", ab.to_text(), Certification::Exact);
            if let Some((x, y, _)) = &canc.value {
                r = r.warnings([format!(
                    "not cancellative: {} and {} become equal after multiplying",
                    ab.render_vector(x),
                    ab.render_vector(y)
                )]);
            }
            r
        }
        Command::CheckWth { max_len, .. } => {
            let h = load(cfg, file)?.with_enumeration_length(*max_len);
            let x = check_exwt(&h);
            let obs = length_obstructions(&h);
            let lm = length_map(&h);
            let mut r = InvariantReport::exact_if("abelianization-weak-transfer", x.passed, x.exact && obs.exact)
                .warnings(x.assumptions.iter().cloned());
            for c in &x.counterexamples {
                r = r.witness(json!({"exwt_counterexample": c}));
            }
            for o in &obs.value {
                r = r.witness(json!({"length_obstruction": o}));
            }
            if let Some(l) = &lm {
                r = r.witness(json!({"length_map": l}));
            }
            r
        }
        _ => unreachable!("dispatched elsewhere"),
    };
    let report = if report.budget.is_null() {
        report.budget(&budget)
    } else {
        report
    };
    Ok(vec![report.warnings(warnings)])
}

fn zss(group: &str, action: ZssAction, max_len: Option<usize>) -> Result<Vec<InvariantReport>> {
    let g = FiniteAbelianGroup::parse(group)?;
    let cap = DEFAULT_GROUP_CAP;
    let r = match action {
        ZssAction::Atoms => {
            let atoms = atoms_of_block_monoid(&g, None, cap)?;
            let m = BlockMonoid::new(g.clone(), None, 1, cap)?;
            let v: Vec<String> = atoms.iter().map(|a| m.render(a)).collect();
            InvariantReport::new(format!("atoms of B({g})"), v, Certification::Exact)
        }
        ZssAction::Davenport => {
            InvariantReport::new(format!("D({g})"), davenport(&g, None, cap)?, Certification::Exact)
        }
        ZssAction::Catenary => {
            let b = block_catenary(&g, None, max_len, cap)?;
            let mut r = InvariantReport::exact_if(format!("c(B({g}))"), b.catenary.value, false)
                .budget_value(json!({"max_sequence_length": b.max_sequence_length}))
                .witness(json!({"davenport": b.davenport}));
            if let Some((e, c)) = &b.catenary.attained_at {
                r = r.witness(json!({"element": e, "chain": c.witness}));
            }
            if let Some(cl) = &b.classified {
                r = r.witness(json!({"classification": cl}));
            }
            r.warnings(["value is the maximum over sequences of bounded length, a lower bound for c(B(G))".to_string()])
        }
        ZssAction::OrderBound => {
            let o = maximal_order_bound(&g, cap)?;
            InvariantReport::new("catenary-bound-maximal-order", o.bound, Certification::Exact).witness(&o)
        }
    };
    Ok(vec![r])
}

fn tri(matrix: &str, action: TriAction, det_cap: u64) -> Result<Vec<InvariantReport>> {
    let a = IntMatrix::parse(matrix)?;
    let verdict = tri_is_atom(&a)?;
    let r = match action {
        TriAction::Atom => {
            let mut r =
                InvariantReport::new("atom", matches!(verdict, TriAtom::Yes(_)), Certification::Exact).witness(verdict);
            if let TriAtom::Yes(_) = verdict {
                r = r.witness(tri_associate_normal_form(&a)?);
            }
            r
        }
        TriAction::Delta => InvariantReport::new("delta", delta_map(&a), Certification::Exact),
        TriAction::Factorize => {
            let h = TriangularSemigroup::new(a.n(), 0, det_cap);
            if a.abs_det() > det_cap {
                bail!("|det| = {} exceeds the cap of {det_cap}", a.abs_det());
            }
            let zs = rigid_factorizations(&h, &a);
            let v: Vec<Vec<String>> = zs
                .value
                .iter()
                .map(|z| z.atoms.iter().map(|u| u.to_string()).collect())
                .collect();
            let classes = permutable_factorizations(&h, &a);
            let keys: Vec<Vec<String>> = classes
                .value
                .iter()
                .map(|z| z.classes.iter().map(|k| k.to_string()).collect())
                .collect();
            InvariantReport::exact_if("rigid-factorizations", v, zs.exact).witness(json!({"permutable": keys}))
        }
    };
    Ok(vec![r])
}

fn mat(matrix: &str, action: MatAction, det_cap: u64) -> Result<Vec<InvariantReport>> {
    let a = IntMatrix::parse(matrix)?;
    if a.det() == 0 {
        bail!("singular matrix");
    }
    let h = FullMatrixSemigroup::new(a.n(), 0, det_cap);
    let r = match action {
        MatAction::Snf => {
            let s = snf(&a)?;
            InvariantReport::new("smith-normal-form", s.invariant_factors(), Certification::Exact).witness(&s)
        }
        MatAction::Atom => InvariantReport::new("atom", h.is_atom(&a).value, Certification::Exact)
            .witness(json!({"abs_det": a.abs_det()})),
        MatAction::Lengths => {
            if a.abs_det() > det_cap {
                bail!("|det| = {} exceeds the cap of {det_cap}", a.abs_det());
            }
            let l = length_profile(&h, &a);
            InvariantReport::exact_if("length-profile", length_json(&l.value), l.exact)
        }
    };
    Ok(vec![r])
}
