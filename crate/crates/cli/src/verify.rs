//! `verify-paper`: every catalog claim and consistency check, one row each.

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use traceideal::catalog::{families, FamilyInstance};
use traceideal::trace::{direct_sum_trace, trace_ideal_oracle};
use traceideal::{Ideal, Polynomial, Result};

use crate::{props, Format};

pub struct Row {
    pub criterion: u8,
    pub family: String,
    pub params: String,
    pub subject: String,
    pub claimed: String,
    pub computed: String,
    pub pass: bool,
}

pub struct Report {
    rows: Vec<Row>,
}

const TITLES: [&str; 15] = [
    "A_inf curve trace ideals",
    "D_inf curve trace ideals",
    "A_n curves, n odd",
    "A_1 surface over QQ(i)",
    "x^2 y + z^2",
    "A_n surfaces",
    "D_n surfaces",
    "E6, E7, E8",
    "oracle agrees with the entries of z id + phi",
    "ker(z id - phi) = im(z id + phi)",
    "no ambient syzygies of z id - phi",
    "radical of tau_MCM",
    "trace of a direct sum",
    "Veronese d = 2",
    "randomized properties",
];

fn criterion_of(family: &str) -> Option<u8> {
    Some(match family {
        "Ainf-dim1" => 1,
        "Dinf-dim1" => 2,
        "An-dim1-odd" => 3,
        "A1-dim2" => 4,
        "X9-dim2" => 5,
        "An-dim2" => 6,
        "Dn-dim2" => 7,
        "E6" | "E7" | "E8" => 8,
        "Veronese2" => 14,
        _ => return None,
    })
}

const DOMAINS: &[&str] = &["An-dim1-odd", "An-dim2", "Dn-dim2", "E6", "E7", "E8", "Veronese2"];
const NON_DOMAINS: &[&str] = &["Dinf-dim1", "A1-dim2"];

impl Report {
    pub fn pass(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    fn criterion_passes(&self, c: u8) -> bool {
        self.rows.iter().filter(|r| r.criterion == c).all(|r| r.pass)
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Lines => {
                for r in &self.rows {
                    let v = if r.pass { "PASS" } else { "FAIL" };
                    writeln!(
                        out,
                        "{}\t{}\t{}\t{}\t{}\t{}\t{v}",
                        r.criterion, r.family, r.params, r.subject, r.claimed, r.computed
                    )
                    .unwrap();
                }
                for c in 1..=15 {
                    writeln!(
                        out,
                        "criterion\t{c}\t{}",
                        if self.criterion_passes(c) { "PASS" } else { "FAIL" }
                    )
                    .unwrap();
                }
            }
            Format::Text => {
                let w = |f: fn(&Row) -> usize| self.rows.iter().map(f).max().unwrap_or(0);
                let (wf, wp, ws, wc) = (
                    w(|r| r.family.len()),
                    w(|r| r.params.len()),
                    w(|r| r.subject.len()),
                    w(|r| r.claimed.len()),
                );
                for r in &self.rows {
                    writeln!(
                        out,
                        "{:>2} {:wf$} {:wp$} {:ws$} claimed {:wc$} computed {} {}",
                        r.criterion,
                        r.family,
                        r.params,
                        r.subject,
                        r.claimed,
                        r.computed,
                        if r.pass { "PASS" } else { "FAIL" }
                    )
                    .unwrap();
                }
                writeln!(out).unwrap();
                for c in 1..=15u8 {
                    let v = if self.criterion_passes(c) { "PASS" } else { "FAIL" };
                    writeln!(out, "{v} criterion {c}: {}", TITLES[c as usize - 1]).unwrap();
                }
                let passed = (1..=15).filter(|&c| self.criterion_passes(c)).count();
                writeln!(out, "{passed} of 15 criteria passed").unwrap();
            }
        }
        out
    }
}

fn row(c: u8, inst: &FamilyInstance, subject: &str, claimed: &str, computed: String, pass: bool) -> Row {
    Row {
        criterion: c,
        family: inst.family.clone(),
        params: inst.params.to_string(),
        subject: subject.to_string(),
        claimed: claimed.to_string(),
        computed,
        pass,
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Claims stated by the catalog for one instance.
fn claim_rows(inst: &FamilyInstance) -> Result<Vec<Row>> {
    let Some(c) = criterion_of(&inst.family) else {
        return Ok(Vec::new());
    };
    let mut rows = Vec::new();
    let traced = inst.traces()?;
    for t in &traced {
        if let (Some(expected), Some(text)) = (&t.module.expected_tau, &t.module.expected_tau_text) {
            rows.push(row(
                c,
                inst,
                &t.module.name,
                text,
                t.trace.to_string(),
                t.trace == *expected,
            ));
        }
    }
    for claim in &inst.claims {
        let parts = claim
            .modules
            .iter()
            .map(|n| inst.module(n)?.module.trace_ideal(&inst.ctx))
            .collect::<Result<Vec<Ideal>>>()?;
        let mut meet = parts[0].clone();
        for p in &parts[1..] {
            meet = meet.intersection(p)?;
        }
        let subject = claim.modules.join(" & ");
        rows.push(row(
            c,
            inst,
            &subject,
            &claim.expected_text,
            meet.to_string(),
            meet == claim.expected,
        ));
    }
    let tau = inst.mcm_test_ideal()?;
    if let (Some(expected), Some(text)) = (&inst.expected_mcm, &inst.expected_mcm_text) {
        rows.push(row(c, inst, "tau_MCM", text, tau.to_string(), tau == *expected));
    }
    if NON_DOMAINS.contains(&inst.family.as_str()) {
        rows.push(row(12, inst, "tau_MCM", "(0)", tau.to_string(), tau.is_zero()));
    }
    if DOMAINS.contains(&inst.family.as_str()) {
        let ring = inst.ctx.ring();
        let mut missing = Vec::new();
        for v in 0..ring.nvars() {
            if !tau.radical_contains(&Polynomial::var(ring, v))? {
                missing.push(ring.names()[v].clone());
            }
        }
        let computed = if missing.is_empty() {
            "m".to_string()
        } else {
            format!("missing {}", missing.join(", "))
        };
        rows.push(row(12, inst, "radical", "m", computed, missing.is_empty()));
    }
    Ok(rows)
}

/// Per-module consistency checks: oracle agreement, kernel = image and the
/// ambient kernel.
fn module_rows(inst: &FamilyInstance) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for m in &inst.modules {
        let Some(zf) = m.zform() else { continue };
        if criterion_of(&inst.family).is_some_and(|c| c <= 8) {
            let cor = zf.trace_ideal_cor(&inst.ctx)?;
            let oracle = trace_ideal_oracle(&m.module.presentation(&inst.ctx)?)?;
            rows.push(row(
                9,
                inst,
                &m.name,
                &cor.to_string(),
                oracle.to_string(),
                cor == oracle,
            ));
        }
        let ok = zf.ker_image_check(&inst.ctx)?;
        rows.push(row(10, inst, &m.name, "yes", yes_no(ok), ok));
        let ok = zf.ambient_kernel_is_trivial()?;
        rows.push(row(11, inst, &m.name, "yes", yes_no(ok), ok));
    }
    Ok(rows)
}

fn veronese_rows(inst: &FamilyInstance) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    let maximal = inst.ctx.ideal("(u, v, w)")?;
    let non_free = inst.non_free()?;
    rows.push(row(
        14,
        inst,
        "non-free modules",
        "1",
        non_free.len().to_string(),
        non_free.len() == 1,
    ));
    for t in non_free {
        let oracle = trace_ideal_oracle(&t.module.module.presentation(&inst.ctx)?)?;
        let subject = format!("{} (oracle)", t.module.name);
        rows.push(row(
            14,
            inst,
            &subject,
            "(u, v, w)",
            oracle.to_string(),
            oracle == maximal,
        ));
    }
    Ok(rows)
}

fn additivity_rows(instances: &[FamilyInstance]) -> Result<Vec<Row>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7ace);
    let candidates: Vec<&FamilyInstance> = instances.iter().filter(|i| i.modules.len() >= 2).collect();
    let picks: Vec<(&FamilyInstance, usize, usize)> = (0..20)
        .map(|_| {
            let inst = *candidates.choose(&mut rng).expect("catalog is not empty");
            (
                inst,
                rng.gen_range(0..inst.modules.len()),
                rng.gen_range(0..inst.modules.len()),
            )
        })
        .collect();
    picks
        .par_iter()
        .map(|(inst, a, b)| {
            let pa = inst.modules[*a].module.presentation(&inst.ctx)?;
            let pb = inst.modules[*b].module.presentation(&inst.ctx)?;
            let whole = direct_sum_trace(&pa, &pb)?;
            let sum = trace_ideal_oracle(&pa)?.sum(&trace_ideal_oracle(&pb)?)?;
            let subject = format!("{} + {}", inst.modules[*a].name, inst.modules[*b].name);
            Ok(row(
                13,
                inst,
                &subject,
                &sum.to_string(),
                whole.to_string(),
                whole == sum,
            ))
        })
        .collect()
}

pub fn run(max_degree: Option<u32>) -> Result<Report> {
    let jobs: Vec<(usize, traceideal::catalog::Params)> = families()
        .iter()
        .enumerate()
        .flat_map(|(k, f)| f.grid().into_iter().map(move |p| (k, p)))
        .collect();
    let instances: Vec<FamilyInstance> = jobs
        .par_iter()
        .map(|(k, p)| families()[*k].instantiate_bounded(p, None, max_degree))
        .collect::<Result<_>>()?;

    let per_instance: Vec<Vec<Row>> = instances
        .par_iter()
        .map(|inst| {
            let mut rows = claim_rows(inst)?;
            rows.extend(module_rows(inst)?);
            if inst.family == "Veronese2" {
                rows.extend(veronese_rows(inst)?);
            }
            Ok(rows)
        })
        .collect::<Result<_>>()?;
    let mut rows: Vec<Row> = per_instance.into_iter().flatten().collect();
    rows.extend(additivity_rows(&instances)?);

    let (cases, failures) = props::run(0x15, 1000);
    let computed = if failures.is_empty() {
        format!("{cases} cases")
    } else {
        failures.join("; ")
    };
    rows.push(Row {
        criterion: 15,
        family: "-".into(),
        params: "-".into(),
        subject: "properties".into(),
        claimed: "no failures".into(),
        computed,
        pass: failures.is_empty() && cases >= 1000,
    });
    // Stable order: by criterion, then in catalog and grid order.
    rows.sort_by_key(|r| r.criterion);
    Ok(Report { rows })
}
