//! Deterministic text and JSON rendering of reports.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::bifurcation::BifurcationReport;
use crate::burnside::BurnsideElement;
use crate::degree::DegreeEngine;
use crate::error::Result;
use crate::lattice::SubgroupPoset;
use crate::rep::{isotropy_oracle, orbit_types_of_character, RepLabel, Representation};
use crate::spectral::{DegreeReport, Problem};
use crate::symmetry::SymmetryGroup;

/// Formats with 12 significant digits and no trailing zeros.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    let r = round_sig(x);
    let s = format!("{r}");
    if s.len() > 20 {
        format!("{r:.11e}")
    } else {
        s
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// Integers as JSON numbers when they fit in `i64`, otherwise as strings.
pub fn serialize_bigint<S: serde::Serializer>(
    x: &num_bigint::BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match x.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&x.to_string()),
    }
}

fn bigint_json(x: &num_bigint::BigInt) -> Value {
    use num_traits::ToPrimitive;
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

fn float_json(x: f64) -> Value {
    json!(round_sig(x))
}

/// A report in both output formats.
pub struct Rendered {
    pub json: Value,
    pub text: String,
}

impl Rendered {
    pub fn json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("report serializes");
        s.push('\n');
        s
    }
}

/// `[{name, coefficient}]` in canonical class order.
pub fn element_json(x: &BurnsideElement, poset: &SubgroupPoset) -> Value {
    Value::Array(
        x.terms()
            .map(|(h, c)| json!({"name": poset.name(h), "coefficient": bigint_json(c)}))
            .collect(),
    )
}

fn width(s: &str) -> usize {
    s.chars().count()
}

/// Left-aligned columns separated by two spaces.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| width(h)).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(width(c));
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let mut l = String::new();
        for (i, (c, w)) in cells.iter().zip(&widths).enumerate() {
            l.push_str(c);
            if i + 1 < cells.len() {
                l.push_str(&" ".repeat(w - width(c) + 2));
            }
        }
        out.push_str(l.trim_end());
        out.push('\n');
    };
    line(header.to_vec());
    for r in rows {
        line(r.iter().map(String::as_str).collect());
    }
    out
}

fn label_name(engine: &DegreeEngine, l: RepLabel) -> String {
    engine.table().render_label(l)
}

pub fn group_info(sym: &SymmetryGroup, engine: &DegreeEngine) -> Rendered {
    let poset = engine.poset();
    let g = sym.group();
    let records = poset.records();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| {
            vec![
                r.id.to_string(),
                r.name.clone(),
                r.order.to_string(),
                r.normalizer_order.to_string(),
                r.weyl_order.to_string(),
                r.conjugates.to_string(),
            ]
        })
        .collect();
    let mut text = String::new();
    writeln!(text, "G = {}, |G| = {}", g.structure_name(), g.order()).unwrap();
    writeln!(text, "conjugacy classes of subgroups: {}", poset.len()).unwrap();
    writeln!(text, "irreducible representations: {}", engine.table().len()).unwrap();
    text.push('\n');
    text.push_str(&table(&["id", "class", "|H|", "|N(H)|", "|W(H)|", "conjugates"], &rows));
    let json = json!({
        "group": g.structure_name(),
        "order": g.order(),
        "m": sym.m(),
        "class_count": poset.len(),
        "irrep_count": engine.table().len(),
        "classes": records.iter().map(|r| json!({
            "id": r.id,
            "name": r.name,
            "order": r.order,
            "normalizer_order": r.normalizer_order,
            "weyl_order": r.weyl_order,
            "conjugates": r.conjugates,
            "covers": r.covers.iter().map(|&c| poset.name(c)).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "irreps": engine.table().irreps().iter().map(|r| json!({
            "label": label_name(engine, r.label),
            "dim": r.dim,
        })).collect::<Vec<_>>(),
    });
    Rendered { json, text }
}

pub fn basic_degrees(engine: &DegreeEngine) -> Result<Rendered> {
    let poset = engine.poset();
    let mut text = String::new();
    let mut items = Vec::new();
    for d in engine.all()? {
        let name = label_name(engine, d.label);
        writeln!(text, "deg {name} = {}", d.value.render(poset)).unwrap();
        items.push(json!({"label": name, "dim": engine.table().get(d.label).map(|r| r.dim),
            "degree": element_json(&d.value, poset)}));
    }
    Ok(Rendered { json: json!({"basic_degrees": items}), text })
}

pub fn burnside_product(engine: &DegreeEngine, left: usize, right: usize) -> Result<Rendered> {
    let poset = engine.poset();
    let p = engine.ring().generator_product(left, right)?;
    let text = format!("({})·({}) = {}\n", poset.name(left), poset.name(right), p.render(poset));
    let json = json!({
        "left": poset.name(left),
        "right": poset.name(right),
        "product": element_json(&p, poset),
    });
    Ok(Rendered { json, text })
}

/// Random-point isotropy types of `𝔼` compared with the character criterion.
pub struct IsotropyCheck {
    pub seed: u64,
    pub observed: Vec<usize>,
    pub predicted: Vec<usize>,
}

impl IsotropyCheck {
    pub fn run(problem: &Problem, report: &DegreeReport, seed: u64) -> Result<Self> {
        let parts: Vec<_> =
            report.ambient.iter().filter_map(|&l| problem.irreps().get(l)).collect();
        let rep = Representation::direct_sum(parts);
        let observed = isotropy_oracle(&rep, problem.poset(), 8, seed);
        let predicted = orbit_types_of_character(&rep.character(), problem.poset())?;
        Ok(IsotropyCheck { seed, observed, predicted })
    }

    pub fn consistent(&self) -> bool {
        self.observed.iter().all(|h| self.predicted.contains(h))
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn existence(problem: &Problem, r: &DegreeReport, iso: Option<&IsotropyCheck>) -> Rendered {
    let poset = problem.poset();
    let engine = &problem.engine;
    let t = &r.table;
    let g = problem.sym.group();
    let m = problem.m();
    let gamma_names: Vec<String> =
        (0..problem.irreps().gamma_irreps().len()).map(|l| format!("𝒰_{l}")).collect();
    let mut text = String::new();
    writeln!(text, "G = {}, |G| = {}, m = {m}", g.structure_name(), g.order()).unwrap();
    if !problem.config.nagumo_assumed {
        writeln!(text, "note: the growth condition on f is not asserted by this configuration")
            .unwrap();
    }
    text.push_str("\nspectrum of A\n");
    let rows: Vec<Vec<String>> = t
        .eigenvalues
        .iter()
        .zip(&t.jmax)
        .map(|(e, j)| {
            let iso = e
                .isotypic
                .iter()
                .zip(&gamma_names)
                .filter(|(c, _)| **c > 0)
                .map(|(c, n)| format!("{c}·{n}"))
                .collect::<Vec<_>>()
                .join(" + ");
            vec![
                e.exact.clone().unwrap_or_else(|| fmt_float(e.mu)),
                e.multiplicity.to_string(),
                iso,
                j.map_or("-".into(), |j| j.to_string()),
            ]
        })
        .collect();
    text.push_str(&table(&["μ", "mult", "Γ-isotypic", "𝔧_μ"], &rows));
    text.push_str("\nnegative spectrum of the linearization\n");
    let rows: Vec<Vec<String>> = t
        .negative
        .iter()
        .map(|n| {
            let comps = n
                .components
                .iter()
                .map(|(l, c)| {
                    let name = label_name(engine, *l);
                    if *c == 1 {
                        name
                    } else {
                        format!("{c}·{name}")
                    }
                })
                .collect::<Vec<_>>()
                .join(" ⊕ ");
            vec![
                n.j.to_string(),
                t.eigenvalues[n.mu_index]
                    .exact
                    .clone()
                    .unwrap_or_else(|| fmt_float(t.eigenvalues[n.mu_index].mu)),
                fmt_float(n.lambda),
                comps,
            ]
        })
        .collect();
    text.push_str(&table(&["j", "μ", "λ_{j,μ}", "E(λ)"], &rows));
    let counters = |map: &std::collections::BTreeMap<usize, u64>| {
        map.iter().map(|(i, v)| format!("{i}:{v}")).collect::<Vec<_>>().join(" ")
    };
    writeln!(text, "\nη = {}", counters(&t.eta)).unwrap();
    writeln!(text, "ρ = {}", counters(&t.rho)).unwrap();
    let factors: Vec<String> = r
        .exponents
        .iter()
        .filter(|(_, e)| e % 2 == 1)
        .map(|(l, _)| format!("deg {}", label_name(engine, *l)))
        .collect();
    writeln!(
        text,
        "\nG-deg = (G) - {}",
        if factors.is_empty() { "(G)".into() } else { factors.join(" ∘ ") }
    )
    .unwrap();
    writeln!(text, "      = {}", r.degree.render(poset)).unwrap();
    writeln!(text, "nonzero terms: {}", r.nonzero_terms.len()).unwrap();
    writeln!(text, "\nmaximal orbit types in 𝔼 \\ {{0}}").unwrap();
    let rows: Vec<Vec<String>> = r
        .maximal_ids
        .iter()
        .map(|&h| {
            let c = r.degree.coefficient(h);
            vec![
                poset.name(h).to_string(),
                c.to_string(),
                (problem.sym.order() / poset.class(h).order()).to_string(),
            ]
        })
        .collect();
    text.push_str(&table(&["class", "coefficient", "orbit size"], &rows));
    writeln!(text, "\nguaranteed solution orbits").unwrap();
    let rows: Vec<Vec<String>> = r
        .guarantees
        .iter()
        .filter(|g| g.maximal && g.orbit_size > 1)
        .map(|g| {
            vec![
                g.orbit_type.clone(),
                g.orbit_size.to_string(),
                yes_no(g.nonconstant).into(),
                yes_no(g.minimal_period_exceeds_base).into(),
            ]
        })
        .collect();
    text.push_str(&table(&["class", "orbit size", "non-constant", "period > 2π"], &rows));
    writeln!(text, "\nat least {} different {}π-periodic solutions", r.total_solutions, 2 * m)
        .unwrap();
    let mut json = json!({
        "group": g.structure_name(),
        "order": g.order(),
        "m": m,
        "nagumo_assumed": problem.config.nagumo_assumed,
        "eigenvalues": t.eigenvalues.iter().zip(&t.jmax).map(|(e, j)| json!({
            "mu": float_json(e.mu),
            "exact": e.exact,
            "multiplicity": e.multiplicity,
            "isotypic": e.isotypic,
            "jmax": j,
        })).collect::<Vec<_>>(),
        "negative_spectrum": t.negative.iter().map(|n| json!({
            "j": n.j,
            "mu": float_json(t.eigenvalues[n.mu_index].mu),
            "lambda": float_json(n.lambda),
            "components": n.components.iter().map(|(l, c)| json!({"label": label_name(engine, *l), "multiplicity": c})).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "beta": t.beta.iter().map(|(&(i, mu), v)| json!({"i": i, "mu_index": mu, "value": v})).collect::<Vec<_>>(),
        "eta": t.eta.iter().map(|(i, v)| json!({"i": i, "value": v})).collect::<Vec<_>>(),
        "rho": t.rho.iter().map(|(i, v)| json!({"i": i, "value": v})).collect::<Vec<_>>(),
        "factors": r.exponents.iter().map(|(l, e)| json!({"label": label_name(engine, *l), "exponent": e})).collect::<Vec<_>>(),
        "degree": element_json(&r.degree, poset),
        "nonzero_term_count": r.nonzero_terms.len(),
        "maximal_orbit_types": r.maximal_orbit_types,
        "guarantees": r.guarantees.iter().map(|g| json!({
            "orbit_type": g.orbit_type,
            "coefficient": bigint_json(&g.coefficient),
            "orbit_size": g.orbit_size,
            "nonconstant": g.nonconstant,
            "minimal_period_exceeds_base": g.minimal_period_exceeds_base,
            "maximal": g.maximal,
        })).collect::<Vec<_>>(),
        "total_solutions": r.total_solutions,
    });
    if let Some(c) = iso {
        let names =
            |ids: &[usize]| ids.iter().map(|&h| poset.name(h).to_string()).collect::<Vec<_>>();
        json["isotropy_check"] = json!({
            "seed": c.seed,
            "observed": names(&c.observed),
            "consistent": c.consistent(),
        });
        writeln!(
            text,
            "\nisotropy oracle (seed {}): {} types observed, {}",
            c.seed,
            c.observed.len(),
            if c.consistent() {
                "all predicted by characters"
            } else {
                "MISMATCH with character criterion"
            }
        )
        .unwrap();
    }
    Rendered { json, text }
}

pub fn bifurcation(problem: &Problem, r: &BifurcationReport) -> Rendered {
    let poset = problem.poset();
    let engine = &problem.engine;
    let mut text = String::new();
    writeln!(
        text,
        "G = {}, m = {}, window [{}, {})",
        problem.sym.group().structure_name(),
        problem.m(),
        fmt_float(r.window.0),
        fmt_float(r.window.1)
    )
    .unwrap();
    text.push('\n');
    let crossed = |p: &crate::bifurcation::CriticalPoint| {
        p.crossing_multiplicities
            .iter()
            .map(|(l, c)| {
                let n = label_name(engine, *l);
                if *c == 1 {
                    n
                } else {
                    format!("{c}·{n}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ⊕ ")
    };
    let rows: Vec<Vec<String>> = r
        .invariants
        .iter()
        .map(|inv| {
            let src = inv
                .at
                .sources
                .iter()
                .map(|(j, mu)| format!("({j}, {})", fmt_float(*mu)))
                .collect::<Vec<_>>()
                .join(" ");
            vec![
                fmt_float(inv.at.alpha),
                src,
                crossed(&inv.at),
                yes_no(inv.nonzero).into(),
                inv.omega.render(poset),
            ]
        })
        .collect();
    text.push_str(&table(&["α", "(j, μ)", "crossing", "ω ≠ 0", "ω"], &rows));
    let coincident = r.invariants.iter().filter(|i| !i.at.simple).count();
    if coincident > 0 {
        writeln!(text, "\n{coincident} critical values are coincident; crossings were merged")
            .unwrap();
    }
    writeln!(text, "\nbifurcation points of nontrivial {}π-periodic solutions:", 2 * problem.m())
        .unwrap();
    for inv in r.invariants.iter().filter(|i| i.nonzero) {
        let names: Vec<&str> = inv.omega.support().iter().map(|&h| poset.name(h)).collect();
        writeln!(
            text,
            "  α = {}: branch symmetries among {}",
            fmt_float(inv.at.alpha),
            names.join(", ")
        )
        .unwrap();
    }
    let json = json!({
        "group": problem.sym.group().structure_name(),
        "m": problem.m(),
        "window": [float_json(r.window.0), float_json(r.window.1)],
        "critical_points": r.invariants.iter().map(|inv| json!({
            "alpha": float_json(inv.at.alpha),
            "sources": inv.at.sources.iter().map(|(j, mu)| json!({"j": j, "mu": float_json(*mu)})).collect::<Vec<_>>(),
            "simple": inv.at.simple,
            "crossing": inv.at.crossing_multiplicities.iter().map(|(l, c)| json!({"label": label_name(engine, *l), "multiplicity": c})).collect::<Vec<_>>(),
            "omega": element_json(&inv.omega, poset),
            "nonzero": inv.nonzero,
            "odd_crossing_predicts_nonzero": inv.odd_crossing_predicts_nonzero,
        })).collect::<Vec<_>>(),
    });
    Rendered { json, text }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_have_twelve_digits() {
        assert_eq!(fmt_float(-17.0 / 10.0), "-1.7");
        assert_eq!(fmt_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_float(-2.0000000000000004), "-2");
        assert_eq!(fmt_float(0.0), "0");
    }

    #[test]
    fn tables_align() {
        let t = table(&["a", "bb"], &[vec!["xyz".into(), "1".into()]]);
        assert_eq!(t, "a    bb\nxyz  1\n");
    }
}
