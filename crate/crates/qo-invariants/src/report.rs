//! Pipeline orchestration and the output document.
//!
//! [`run`] drives the whole computation for one input document: validate
//! the branch, derive both towers, compute Euler characteristics, zeta
//! functions, comparison matrices, eigenspace dimensions, and Betti
//! numbers, and collect every named theorem check. The result is a
//! [`ReportDocument`] that can be rendered as human-readable text or as
//! a structured JSON document.
//!
//! All rationals are rendered as exact lowest-terms fraction strings
//! (`p/q`, or `p` alone for integers); maps are emitted in ascending key
//! order, so identical input yields byte-identical output.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::branch::{Axis, DerivationSequence, Level};
use crate::comparison::{verify_comparison, Check, ComparisonReport};
use crate::error::Result;
use crate::exact::Mat2;
use crate::input::InputDocument;
use crate::invariants::{betti_report, xi_sequence, BettiReport};
use crate::zeta::{horizontal_zeta, vertical_zeta, CycloProduct};

/// What the run should produce.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    /// The full document: tables, zeta functions, matrices, Betti data.
    #[default]
    Report,
    /// Only the named checks; exit status reflects their outcome.
    Verify,
    /// Only the zeta functions.
    Zeta,
}

/// Which towers to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum AxisSelection {
    One,
    Two,
    #[default]
    Both,
}

impl AxisSelection {
    fn axes(self) -> Vec<Axis> {
        match self {
            AxisSelection::One => vec![Axis::One],
            AxisSelection::Two => vec![Axis::Two],
            AxisSelection::Both => vec![Axis::One, Axis::Two],
        }
    }
}

/// Output rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Structured,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct RunOptions {
    pub mode: Mode,
    pub axis: AxisSelection,
    /// Enforce essentiality during validation (also enabled by the
    /// input document's own flag).
    pub strict: bool,
}

/// Everything a run produces besides the exit status.
#[derive(Debug)]
pub struct RunOutcome {
    pub document: ReportDocument,
    /// True when every theorem check passed. Hard failures inside the
    /// pipeline surface as errors instead.
    pub checks_pass: bool,
}

// ---- the serializable document ----

#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub input: InputEcho,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degrees: Option<DegreeTable>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axes: Option<Vec<AxisTable>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zetas: Option<Vec<AxisZetas>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub comparison: Option<ComparisonSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<BettiSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckRow>>,
}

#[derive(Debug, Serialize)]
pub struct InputEcho {
    pub branch: Vec<[String; 2]>,
    pub strict: bool,
}

#[derive(Debug, Serialize)]
pub struct DegreeTable {
    /// Degree of the surface itself.
    pub degree: String,
    pub levels: Vec<DegreeRow>,
}

#[derive(Debug, Serialize)]
pub struct DegreeRow {
    pub level: usize,
    pub d_bullet: String,
    pub c_bullet: String,
    /// Degree of the level's derived surface (suffix product).
    pub degree: String,
}

#[derive(Debug, Serialize)]
pub struct AxisTable {
    pub axis: u8,
    pub levels: Vec<LevelRow>,
    /// Transverse fiber Euler characteristic per level.
    pub euler: Vec<String>,
    /// Vertical monodromy 1-eigenspace dimension per level.
    pub xi: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct LevelRow {
    pub level: usize,
    pub branch: Vec<[String; 2]>,
    pub invariants: InvariantsRow,
}

#[derive(Debug, Serialize)]
pub struct InvariantsRow {
    pub n1: String,
    pub m1: String,
    pub n2: String,
    pub m2: String,
    pub d_bullet: String,
    pub b1: String,
    pub b2: String,
    pub c_bullet: String,
    pub r1: String,
    pub s1: String,
    pub r2: String,
    pub s2: String,
}

#[derive(Debug, Serialize)]
pub struct AxisZetas {
    pub axis: u8,
    /// Factored form: ascending `[a, e]` pairs meaning `(t^a - 1)^e`.
    pub horizontal: Vec<[String; 2]>,
    /// Cyclotomic exponents: ascending `[d, e]` pairs meaning `Phi_d^e`.
    pub horizontal_cyclotomic: Vec<[String; 2]>,
    pub vertical: Vec<[String; 2]>,
    pub vertical_cyclotomic: Vec<[String; 2]>,
}

#[derive(Debug, Serialize)]
pub struct ComparisonSection {
    pub pairs: Vec<PairRow>,
    pub checks: Vec<CheckRow>,
}

#[derive(Debug, Serialize)]
pub struct PairRow {
    pub level: usize,
    pub u: [[String; 2]; 2],
    pub m: [[String; 2]; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRow {
    pub name: String,
    pub level: usize,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Serialize)]
pub struct BettiSection {
    pub xi_levels: Vec<String>,
    pub xi: String,
    pub h1_vertical: String,
    pub h1_boundary: String,
    pub zeta_consistency: bool,
}

// ---- intermediate per-axis computation ----

struct AxisData {
    axis: Axis,
    seq: DerivationSequence,
    euler: Vec<BigInt>,
    horizontal: CycloProduct,
    vertical: CycloProduct,
    xi: Vec<BigInt>,
}

impl AxisData {
    fn compute(seq: DerivationSequence) -> Result<AxisData> {
        let euler = seq.transverse_euler()?;
        let horizontal = horizontal_zeta(&seq);
        let vertical = vertical_zeta(&seq)?;
        let xi = xi_sequence(&seq);
        Ok(AxisData {
            axis: seq.axis,
            seq,
            euler,
            horizontal,
            vertical,
            xi,
        })
    }

    /// The per-axis consistency checks tying the zeta route to the
    /// closed recursions.
    fn checks(&self) -> Vec<Check> {
        let chi = &self.euler[0];
        let mut checks = vec![
            Check {
                name: "horizontal_zeta_degree",
                level: 0,
                pass: &self.horizontal.degree_sum() == chi,
                witness: format!(
                    "axis {}: degree {} vs euler characteristic {}",
                    self.axis,
                    self.horizontal.degree_sum(),
                    chi
                ),
            },
            Check {
                name: "vertical_zeta_degree",
                level: 0,
                pass: &self.vertical.degree_sum() == chi,
                witness: format!(
                    "axis {}: degree {} vs euler characteristic {}",
                    self.axis,
                    self.vertical.degree_sum(),
                    chi
                ),
            },
            Check {
                name: "vertical_zeta_multiplicity",
                level: 0,
                pass: self.vertical.tm1_multiplicity() == BigInt::one() - &self.xi[0],
                witness: format!(
                    "axis {}: multiplicity {} vs 1 - xi = {}",
                    self.axis,
                    self.vertical.tm1_multiplicity(),
                    BigInt::one() - &self.xi[0]
                ),
            },
        ];
        for k in 0..self.xi.len() {
            let next = if k + 1 < self.xi.len() {
                self.xi[k + 1].clone()
            } else {
                BigInt::ZERO
            };
            checks.push(Check {
                name: "xi_monotone_nonnegative",
                level: k,
                pass: self.xi[k] >= next && next >= BigInt::ZERO,
                witness: format!(
                    "axis {}: xi[{k}] = {} >= {next} >= 0",
                    self.axis, self.xi[k]
                ),
            });
        }
        checks
    }
}

/// Runs the pipeline on a parsed input document.
///
/// Errors are user errors (validation) or hard internal inconsistencies;
/// ordinary theorem-check failures are reported through
/// [`RunOutcome::checks_pass`] and the document instead.
pub fn run(input: &InputDocument, options: &RunOptions) -> Result<RunOutcome> {
    let tuple = input.tuple();
    tuple.validate(options.strict || input.strict)?;

    let axes = options.axis.axes();
    let mut data = Vec::new();
    for &axis in &axes {
        data.push(AxisData::compute(DerivationSequence::compute(
            &tuple, axis,
        )?)?);
    }

    let mut checks: Vec<Check> = Vec::new();
    for axis_data in &data {
        checks.extend(axis_data.checks());
    }

    let mut comparison: Option<ComparisonReport> = None;
    let mut betti: Option<BettiReport> = None;
    if let [one, two] = &data[..] {
        let report = verify_comparison(&one.seq, &two.seq);
        checks.extend(report.checks.iter().cloned());
        comparison = Some(report);

        checks.push(Check {
            name: "xi_axis_symmetry",
            level: 0,
            pass: one.xi == two.xi,
            witness: format!("axis 1 gives {:?}, axis 2 gives {:?}", one.xi, two.xi),
        });
        if one.xi == two.xi {
            let report = betti_report(&one.seq, &two.seq, &one.vertical, &two.vertical)?;
            checks.push(Check {
                name: "h1_boundary_even",
                level: 0,
                pass: (&report.h1_boundary % 2u32) == BigInt::ZERO,
                witness: format!("h1 = {}", report.h1_boundary),
            });
            betti = Some(report);
        }
    }

    let checks_pass = checks.iter().all(|c| c.pass);
    let document = build_document(input, options, &data, comparison, betti, checks);
    Ok(RunOutcome {
        document,
        checks_pass,
    })
}

// ---- document assembly ----

fn fraction_pair(pair: &crate::branch::ExponentPair) -> [String; 2] {
    [pair.lambda1.to_string(), pair.lambda2.to_string()]
}

fn mat_rows(m: &Mat2) -> [[String; 2]; 2] {
    [
        [m.a11.to_string(), m.a12.to_string()],
        [m.a21.to_string(), m.a22.to_string()],
    ]
}

fn factor_rows(p: &CycloProduct) -> Vec<[String; 2]> {
    p.factors()
        .iter()
        .map(|(a, e)| [a.to_string(), e.to_string()])
        .collect()
}

fn check_row(c: &Check) -> CheckRow {
    CheckRow {
        name: c.name.to_string(),
        level: c.level,
        pass: c.pass,
        witness: c.witness.clone(),
    }
}

fn level_row(k: usize, level: &Level) -> LevelRow {
    let inv = &level.invariants;
    LevelRow {
        level: k,
        branch: level.branch.terms.iter().map(fraction_pair).collect(),
        invariants: InvariantsRow {
            n1: inv.n1.to_string(),
            m1: inv.m1.to_string(),
            n2: inv.n2.to_string(),
            m2: inv.m2.to_string(),
            d_bullet: inv.d_bullet.to_string(),
            b1: inv.b1.to_string(),
            b2: inv.b2.to_string(),
            c_bullet: inv.c_bullet.to_string(),
            r1: inv.r1.to_string(),
            s1: inv.s1.to_string(),
            r2: inv.r2.to_string(),
            s2: inv.s2.to_string(),
        },
    }
}

fn build_document(
    input: &InputDocument,
    options: &RunOptions,
    data: &[AxisData],
    comparison: Option<ComparisonReport>,
    betti: Option<BettiReport>,
    checks: Vec<Check>,
) -> ReportDocument {
    let echo = InputEcho {
        branch: input.branch.iter().map(fraction_pair).collect(),
        strict: options.strict || input.strict,
    };

    let zetas: Vec<AxisZetas> = data
        .iter()
        .map(|d| AxisZetas {
            axis: d.axis.index(),
            horizontal: factor_rows(&d.horizontal),
            horizontal_cyclotomic: d
                .horizontal
                .cyclotomic_normal_form()
                .iter()
                .map(|(a, e)| [a.to_string(), e.to_string()])
                .collect(),
            vertical: factor_rows(&d.vertical),
            vertical_cyclotomic: d
                .vertical
                .cyclotomic_normal_form()
                .iter()
                .map(|(a, e)| [a.to_string(), e.to_string()])
                .collect(),
        })
        .collect();

    match options.mode {
        Mode::Zeta => ReportDocument {
            input: echo,
            degrees: None,
            axes: None,
            zetas: Some(zetas),
            comparison: None,
            betti: None,
            checks: None,
        },
        Mode::Verify => ReportDocument {
            input: echo,
            degrees: None,
            axes: None,
            zetas: None,
            comparison: None,
            betti: None,
            checks: Some(checks.iter().map(check_row).collect()),
        },
        Mode::Report => {
            let reference = &data[0];
            let suffix = reference.seq.suffix_degrees();
            let degrees = DegreeTable {
                degree: reference.seq.surface_degree().to_string(),
                levels: reference
                    .seq
                    .levels
                    .iter()
                    .enumerate()
                    .map(|(k, lvl)| DegreeRow {
                        level: k,
                        d_bullet: lvl.invariants.d_bullet.to_string(),
                        c_bullet: lvl.invariants.c_bullet.to_string(),
                        degree: suffix[k].to_string(),
                    })
                    .collect(),
            };
            let axes: Vec<AxisTable> = data
                .iter()
                .map(|d| AxisTable {
                    axis: d.axis.index(),
                    levels: d
                        .seq
                        .levels
                        .iter()
                        .enumerate()
                        .map(|(k, lvl)| level_row(k, lvl))
                        .collect(),
                    euler: d.euler.iter().map(BigInt::to_string).collect(),
                    xi: d.xi.iter().map(BigInt::to_string).collect(),
                })
                .collect();
            let comparison = comparison.map(|report| ComparisonSection {
                pairs: report
                    .pairs
                    .iter()
                    .map(|p| PairRow {
                        level: p.level,
                        u: mat_rows(&p.u),
                        m: mat_rows(&p.m),
                    })
                    .collect(),
                checks: report.checks.iter().map(check_row).collect(),
            });
            let betti = betti.map(|b| BettiSection {
                xi_levels: b.xi_levels.iter().map(BigInt::to_string).collect(),
                xi: b.xi.to_string(),
                h1_vertical: b.h1_vertical.to_string(),
                h1_boundary: b.h1_boundary.to_string(),
                zeta_consistency: b.zeta_consistency,
            });
            ReportDocument {
                input: echo,
                degrees: Some(degrees),
                axes: Some(axes),
                zetas: Some(zetas),
                comparison,
                betti,
                checks: Some(checks.iter().map(check_row).collect()),
            }
        }
    }
}

// ---- rendering ----

impl ReportDocument {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Structured => self.to_structured(),
        }
    }

    /// The structured (JSON) rendering; deterministic byte-for-byte.
    pub fn to_structured(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("document serializes");
        out.push('\n');
        out
    }

    /// The human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let push = |out: &mut String, line: &str| {
            out.push_str(line);
            out.push('\n');
        };

        push(&mut out, "== input ==");
        for pair in &self.input.branch {
            push(&mut out, &format!("  ({}, {})", pair[0], pair[1]));
        }
        push(
            &mut out,
            &format!("  strict validation: {}", self.input.strict),
        );

        if let Some(degrees) = &self.degrees {
            push(&mut out, "\n== degrees ==");
            push(
                &mut out,
                &format!("  surface degree d = {}", degrees.degree),
            );
            push(&mut out, "  level  d_bullet  c_bullet  degree");
            for row in &degrees.levels {
                push(
                    &mut out,
                    &format!(
                        "  {:<5}  {:<8}  {:<8}  {}",
                        row.level, row.d_bullet, row.c_bullet, row.degree
                    ),
                );
            }
        }

        if let Some(axes) = &self.axes {
            for table in axes {
                push(&mut out, &format!("\n== axis {} derivation ==", table.axis));
                for row in &table.levels {
                    let branch = row
                        .branch
                        .iter()
                        .map(|p| format!("({}, {})", p[0], p[1]))
                        .collect::<Vec<_>>()
                        .join(" + ");
                    push(&mut out, &format!("  level {}: {branch}", row.level));
                    let inv = &row.invariants;
                    push(
                        &mut out,
                        &format!(
                            "    n1={} m1={} n2={} m2={} d_bullet={} b1={} b2={} c_bullet={} (r1,s1)=({},{}) (r2,s2)=({},{})",
                            inv.n1, inv.m1, inv.n2, inv.m2, inv.d_bullet, inv.b1, inv.b2,
                            inv.c_bullet, inv.r1, inv.s1, inv.r2, inv.s2
                        ),
                    );
                }
                push(
                    &mut out,
                    &format!("  euler characteristics: {}", table.euler.join(", ")),
                );
                push(&mut out, &format!("  xi sequence: {}", table.xi.join(", ")));
            }
        }

        if let Some(zetas) = &self.zetas {
            for z in zetas {
                push(&mut out, &format!("\n== axis {} zeta functions ==", z.axis));
                push(
                    &mut out,
                    &format!("  horizontal: {}", render_factors(&z.horizontal)),
                );
                push(
                    &mut out,
                    &format!("  vertical:   {}", render_factors(&z.vertical)),
                );
            }
        }

        if let Some(comparison) = &self.comparison {
            push(&mut out, "\n== comparison matrices ==");
            for pair in &comparison.pairs {
                push(
                    &mut out,
                    &format!(
                        "  level {}: U = {}, M = {}",
                        pair.level,
                        render_mat(&pair.u),
                        render_mat(&pair.m)
                    ),
                );
            }
            push(&mut out, "\n== comparison checks ==");
            for check in &comparison.checks {
                push(&mut out, &render_check(check));
            }
        }

        if let Some(betti) = &self.betti {
            push(&mut out, "\n== betti numbers ==");
            push(
                &mut out,
                &format!("  xi per level: {}", betti.xi_levels.join(", ")),
            );
            push(&mut out, &format!("  xi = {}", betti.xi));
            push(
                &mut out,
                &format!("  h1(vertical fibration space) = {}", betti.h1_vertical),
            );
            push(
                &mut out,
                &format!("  h1(Milnor fiber boundary) = {}", betti.h1_boundary),
            );
            push(
                &mut out,
                &format!("  zeta consistency: {}", betti.zeta_consistency),
            );
        }

        if let (Some(checks), None) = (&self.checks, &self.comparison) {
            push(&mut out, "\n== checks ==");
            for check in checks {
                push(&mut out, &render_check(check));
            }
        }

        out
    }
}

fn render_factors(rows: &[[String; 2]]) -> String {
    if rows.is_empty() {
        return "1".to_string();
    }
    rows.iter()
        .map(|r| format!("(t^{} - 1)^{}", r[0], r[1]))
        .collect::<Vec<_>>()
        .join(" * ")
}

fn render_mat(rows: &[[String; 2]; 2]) -> String {
    format!(
        "[[{}, {}], [{}, {}]]",
        rows[0][0], rows[0][1], rows[1][0], rows[1][1]
    )
}

fn render_check(check: &CheckRow) -> String {
    format!(
        "  [{}] {} (level {}): {}",
        if check.pass { "pass" } else { "FAIL" },
        check.name,
        check.level,
        check.witness
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn golden_input() -> InputDocument {
        InputDocument::parse(r#"{"branch": [["2/7","4/5"],["5/14","1"],["2","19/10"]]}"#).unwrap()
    }

    #[test]
    fn report_mode_contains_the_headline_numbers() {
        let outcome = run(&golden_input(), &RunOptions::default()).unwrap();
        assert!(outcome.checks_pass);
        let doc = outcome.document;
        assert_eq!(doc.degrees.as_ref().unwrap().degree, "140");
        let betti = doc.betti.as_ref().unwrap();
        assert_eq!(betti.xi, "416");
        assert_eq!(betti.h1_vertical, "417");
        assert_eq!(betti.h1_boundary, "832");
        let comparison = doc.comparison.as_ref().unwrap();
        assert_eq!(
            comparison.pairs[0].m,
            [
                ["-23".to_string(), "2".to_string()],
                ["-12".to_string(), "1".to_string()]
            ]
        );
        let text = doc.to_text();
        assert!(text.contains("h1(Milnor fiber boundary) = 832"));
    }

    #[test]
    fn verify_mode_lists_only_checks() {
        let outcome = run(
            &golden_input(),
            &RunOptions {
                mode: Mode::Verify,
                ..RunOptions::default()
            },
        )
        .unwrap();
        assert!(outcome.checks_pass);
        let doc = outcome.document;
        assert!(doc.degrees.is_none() && doc.axes.is_none() && doc.betti.is_none());
        let checks = doc.checks.as_ref().unwrap();
        assert!(checks.iter().all(|c| c.pass));
        assert!(checks.iter().any(|c| c.name == "m_relation"));
        assert!(checks.iter().any(|c| c.name == "xi_axis_symmetry"));
    }

    #[test]
    fn zeta_mode_emits_four_zeta_functions() {
        let outcome = run(
            &golden_input(),
            &RunOptions {
                mode: Mode::Zeta,
                ..RunOptions::default()
            },
        )
        .unwrap();
        let zetas = outcome.document.zetas.as_ref().unwrap();
        assert_eq!(zetas.len(), 2);
        assert_eq!(
            zetas[0].vertical,
            vec![
                ["1".to_string(), "140".to_string()],
                ["14".to_string(), "-554".to_string()],
                ["8022".to_string(), "-1".to_string()]
            ]
        );
    }

    #[test]
    fn single_axis_run_skips_cross_axis_sections() {
        let outcome = run(
            &golden_input(),
            &RunOptions {
                axis: AxisSelection::Two,
                ..RunOptions::default()
            },
        )
        .unwrap();
        assert!(outcome.checks_pass);
        let doc = outcome.document;
        assert!(doc.comparison.is_none() && doc.betti.is_none());
        assert_eq!(doc.axes.as_ref().unwrap().len(), 1);
        assert_eq!(doc.axes.as_ref().unwrap()[0].axis, 2);
    }

    #[test]
    fn structured_output_is_deterministic() {
        let options = RunOptions::default();
        let a = run(&golden_input(), &options)
            .unwrap()
            .document
            .to_structured();
        let b = run(&golden_input(), &options)
            .unwrap()
            .document
            .to_structured();
        assert_eq!(a, b);
        assert!(a.contains("\"h1_boundary\": \"832\""));
    }

    #[test]
    fn invalid_branch_is_a_validation_error() {
        let doc = InputDocument::parse(r#"{"branch": [["0","4/5"]]}"#).unwrap();
        let err = run(&doc, &RunOptions::default()).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn strict_flag_from_options_or_document() {
        let inessential = r#"{"branch": [["1/2","1/2"],["3/2","5/2"]]}"#;
        let doc = InputDocument::parse(inessential).unwrap();
        assert!(run(&doc, &RunOptions::default()).is_ok());
        let strict = RunOptions {
            strict: true,
            ..RunOptions::default()
        };
        assert_eq!(run(&doc, &strict).unwrap_err().exit_code(), 1);

        let flagged =
            InputDocument::parse(r#"{"branch": [["1/2","1/2"],["3/2","5/2"]], "strict": true}"#)
                .unwrap();
        assert_eq!(
            run(&flagged, &RunOptions::default())
                .unwrap_err()
                .exit_code(),
            1
        );
    }
}
