//! One function per subcommand. Each turns a scenario into a report.

use anyhow::{bail, Result};
use serde::Serialize;

use mlsfr_core::allocator::{
    efficiency_matrix, evaluate_pairings, greedy_allocate, optimal_pattern_probability,
    AllocationResult, PairingComparison, SolverRegistry, UeAssignment,
};
use mlsfr_core::linkmodel::{efficiency_at, gamma_plateau, gamma_sweep};
use mlsfr_core::schemes::{design_gamma, Level, Scheme, SchemeRegistry};

use crate::output::{num, Format, Report};
use crate::scenario::Scenario;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaPoint {
    pub gamma_db: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig5Curve {
    pub beta0_squared: f64,
    pub beta0: f64,
    /// η with the first ring silent.
    pub plateau: f64,
    pub points: Vec<GammaPoint>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig5Report {
    pub curves: Vec<Fig5Curve>,
}

impl Report for Fig5Report {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["beta0_squared", "gamma_db", "eta"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.curves
            .iter()
            .flat_map(|c| {
                c.points
                    .iter()
                    .map(|p| vec![num(c.beta0_squared), num(p.gamma_db), num(p.eta)])
            })
            .collect()
    }

    fn default_format(&self) -> Format {
        Format::Csv
    }
}

/// γ from `min` to 0 dB inclusive, as exact multiples of `step`.
fn gamma_grid(min: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || min.is_nan() || min >= 0.0 {
        bail!("gamma grid needs a negative start and a positive step (got {min}, {step})");
    }
    let n = (-min / step).round() as usize;
    Ok((0..=n).map(|k| min + k as f64 * step).collect())
}

pub fn run_fig5(scenario: &Scenario) -> Result<Fig5Report> {
    let params = scenario.link_params();
    let layout = scenario.layout()?;
    let grid = gamma_grid(scenario.fig5_gamma_min_db, scenario.fig5_gamma_step_db)?;
    let curves = scenario
        .fig5_beta0_squared
        .iter()
        .map(|&b2| {
            let beta0 = b2.sqrt();
            let points = gamma_sweep(&params, &layout, beta0, &grid)?
                .into_iter()
                .map(|(gamma_db, eta)| GammaPoint { gamma_db, eta })
                .collect();
            Ok(Fig5Curve {
                beta0_squared: b2,
                beta0,
                plateau: gamma_plateau(&params, &layout, beta0)?,
                points,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Fig5Report { curves })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaPoint {
    pub beta0: f64,
    pub eta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig6Curve {
    pub scheme: String,
    pub level: usize,
    pub gain_db: f64,
    pub points: Vec<BetaPoint>,
}

/// A level actually used on a circle by the equal-rate allocation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OperatingDot {
    pub scheme: String,
    pub level: usize,
    pub beta0: f64,
    pub eta: f64,
    pub share_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig6Report {
    pub curves: Vec<Fig6Curve>,
    pub dots: Vec<OperatingDot>,
}

impl Report for Fig6Report {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["scheme", "level", "kind", "beta0", "eta"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let curves = self.curves.iter().flat_map(|c| {
            c.points.iter().map(|p| {
                vec![
                    c.scheme.clone(),
                    c.level.to_string(),
                    "curve".into(),
                    num(p.beta0),
                    num(p.eta),
                ]
            })
        });
        let dots = self.dots.iter().map(|d| {
            vec![
                d.scheme.clone(),
                d.level.to_string(),
                "dot".into(),
                num(d.beta0),
                num(d.eta),
            ]
        });
        curves.chain(dots).collect()
    }

    fn default_format(&self) -> Format {
        Format::Csv
    }
}

fn beta_grid(step: f64) -> Result<Vec<f64>> {
    let m = (1.0 / step).round();
    if step.is_nan() || step <= 0.0 || m < 1.0 || (m * step - 1.0).abs() > 1e-9 {
        bail!("fig6_beta_step must divide 1 (got {step})");
    }
    let m = m as usize;
    Ok((1..=m).map(|k| k as f64 / m as f64).collect())
}

fn build_schemes(scenario: &Scenario) -> Result<Vec<Scheme>> {
    let registry = SchemeRegistry::with_builtins();
    if scenario.schemes.is_empty() {
        bail!("scenario lists no schemes");
    }
    Ok(scenario
        .schemes
        .iter()
        .map(|s| registry.build(s))
        .collect::<Result<_, _>>()?)
}

fn allocate(scenario: &Scenario, scheme: &Scheme) -> Result<(AllocationResult, Vec<Vec<f64>>)> {
    let solvers = SolverRegistry::with_builtins(scenario.coverage_rule()?);
    let solver = solvers.get(&scenario.solver)?;
    let eff = efficiency_matrix(
        &scenario.link_params(),
        &scenario.layout()?,
        scheme,
        &scenario.circles,
    )?;
    let res = solver.solve(scheme, &eff)?;
    Ok((res, eff.eta))
}

pub fn run_fig6(scenario: &Scenario) -> Result<Fig6Report> {
    let params = scenario.link_params();
    let layout = scenario.layout()?;
    let betas = beta_grid(scenario.fig6_beta_step)?;
    let mut curves = Vec::new();
    let mut dots = Vec::new();
    for scheme in build_schemes(scenario)? {
        for level in scheme.levels() {
            let profile = scheme.interference_profile(level.index)?;
            let points = betas
                .iter()
                .map(|&beta0| {
                    Ok(BetaPoint {
                        beta0,
                        eta: efficiency_at(&params, &layout, &profile, beta0)?,
                    })
                })
                .collect::<Result<_>>()?;
            curves.push(Fig6Curve {
                scheme: scheme.name().to_string(),
                level: level.index,
                gain_db: level.gain_db,
                points,
            });
        }
        let (res, eta) = allocate(scenario, &scheme)?;
        for (i, &beta0) in scenario.circles.iter().enumerate() {
            for (n, row) in res.x.iter().enumerate() {
                if row[i] > 0.0 {
                    dots.push(OperatingDot {
                        scheme: scheme.name().to_string(),
                        level: n + 1,
                        beta0,
                        eta: eta[n][i],
                        share_percent: 100.0 * row[i],
                    });
                }
            }
        }
    }
    Ok(Fig6Report { curves, dots })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchemeAllocation {
    pub scheme: String,
    pub solver: String,
    pub gains_db: Vec<f64>,
    pub caps: Vec<f64>,
    /// `[level][circle]`, percent of the total bandwidth.
    pub allocation_percent: Vec<Vec<f64>>,
    pub level_totals_percent: Vec<f64>,
    pub circle_totals_percent: Vec<f64>,
    pub binding: Vec<bool>,
    pub common_rate: f64,
    pub overall_efficiency: f64,
    /// Relative gain in overall efficiency over the baseline scheme.
    pub improvement_percent: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table4Report {
    pub circles: Vec<f64>,
    pub baseline: String,
    pub schemes: Vec<SchemeAllocation>,
}

impl Report for Table4Report {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["scheme", "row", "beta0", "value"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for s in &self.schemes {
            let mut push = |row: String, beta: String, v: f64| {
                rows.push(vec![s.scheme.clone(), row, beta, num(v)]);
            };
            for (n, levels) in s.allocation_percent.iter().enumerate() {
                for (b, v) in self.circles.iter().zip(levels) {
                    push((n + 1).to_string(), num(*b), *v);
                }
            }
            for (b, v) in self.circles.iter().zip(&s.circle_totals_percent) {
                push("T".into(), num(*b), *v);
            }
            push("common_rate".into(), String::new(), s.common_rate);
            push(
                "overall_efficiency".into(),
                String::new(),
                s.overall_efficiency,
            );
            push(
                "improvement_percent".into(),
                String::new(),
                s.improvement_percent,
            );
        }
        rows
    }

    fn default_format(&self) -> Format {
        Format::Json
    }
}

pub fn run_table4(scenario: &Scenario) -> Result<Table4Report> {
    let schemes = build_schemes(scenario)?;
    let baseline = scenario
        .schemes
        .iter()
        .position(|s| s.kind == "reuse1")
        .unwrap_or(0);
    let mut out = Vec::with_capacity(schemes.len());
    for scheme in &schemes {
        let (res, _) = allocate(scenario, scheme)?;
        let pct = |v: &[f64]| v.iter().map(|x| 100.0 * x).collect::<Vec<_>>();
        out.push(SchemeAllocation {
            scheme: scheme.name().to_string(),
            solver: scenario.solver.clone(),
            gains_db: scheme.levels().iter().map(|l| l.gain_db).collect(),
            caps: scheme.caps(),
            allocation_percent: res.x.iter().map(|row| pct(row)).collect(),
            level_totals_percent: pct(&res.level_totals()),
            circle_totals_percent: pct(&res.circle_totals()),
            binding: res.binding.clone(),
            common_rate: res.common_rate,
            overall_efficiency: res.overall_efficiency,
            improvement_percent: 0.0,
        });
    }
    let base = out[baseline].overall_efficiency;
    for s in &mut out {
        s.improvement_percent = 100.0 * (s.overall_efficiency / base - 1.0);
    }
    Ok(Table4Report {
        circles: scenario.circles.clone(),
        baseline: out[baseline].scheme.clone(),
        schemes: out,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnchorResult {
    pub beta0: f64,
    pub fraction: f64,
    pub gamma_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesignReport {
    pub anchors: Vec<AnchorResult>,
    /// First anchor's γ after rounding; the scheme's lowest gain.
    pub gamma_min_db: f64,
    pub scheme: String,
    pub subbands: usize,
    pub levels: Vec<Level>,
    pub subband_gammas_db: Vec<f64>,
}

impl Report for DesignReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["level", "gain_db", "role", "partner_index", "bandwidth_cap"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.levels
            .iter()
            .map(|l| {
                let role = match l.role {
                    mlsfr_core::schemes::Role::Primary => "primary",
                    mlsfr_core::schemes::Role::Secondary => "secondary",
                };
                vec![
                    l.index.to_string(),
                    num(l.gain_db),
                    role.into(),
                    l.partner_index.to_string(),
                    num(l.bandwidth_cap),
                ]
            })
            .collect()
    }

    fn default_format(&self) -> Format {
        Format::Json
    }
}

pub fn run_design(scenario: &Scenario) -> Result<DesignReport> {
    let params = scenario.link_params();
    let layout = scenario.layout()?;
    if scenario.design_anchors.is_empty() {
        bail!("scenario lists no design anchors");
    }
    let anchors = scenario
        .design_anchors
        .iter()
        .map(|a| {
            Ok(AnchorResult {
                beta0: a.beta0,
                fraction: a.fraction,
                gamma_db: design_gamma(&params, &layout, a.beta0, a.fraction)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let raw = anchors[0].gamma_db;
    let step = scenario.design_round_db;
    let gamma_min_db = if step > 0.0 {
        (raw / step).round() * step
    } else {
        raw
    };
    let scheme = Scheme::mlsfr(scenario.design_subbands, gamma_min_db)?;
    Ok(DesignReport {
        anchors,
        gamma_min_db,
        scheme: scheme.name().to_string(),
        subbands: scheme.sub_band_count(),
        subband_gammas_db: scheme.subband_gammas_db(),
        levels: scheme.levels().to_vec(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LevelCoverage {
    pub level: usize,
    pub gain_db: f64,
    pub coverage_beta: f64,
    pub cap: f64,
    pub remaining: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AllocReport {
    pub scheme: String,
    pub coverage_margin: f64,
    pub levels: Vec<LevelCoverage>,
    pub assignments: Vec<UeAssignment>,
}

impl Report for AllocReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["ue", "beta0", "demand", "level", "status", "band_list"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        self.assignments
            .iter()
            .map(|a| {
                let status = match a.denial {
                    None => "assigned",
                    Some(mlsfr_core::allocator::DenialReason::OutOfCoverage) => "out of coverage",
                    Some(mlsfr_core::allocator::DenialReason::InsufficientResources) => {
                        "insufficient resources"
                    }
                };
                let bands: Vec<String> = a.band_list.iter().map(|b| b.to_string()).collect();
                vec![
                    a.ue.to_string(),
                    num(a.beta0),
                    num(a.demand),
                    a.level.map(|l| l.to_string()).unwrap_or_default(),
                    status.into(),
                    bands.join(" "),
                ]
            })
            .collect()
    }

    fn default_format(&self) -> Format {
        Format::Json
    }
}

pub fn run_alloc(scenario: &Scenario) -> Result<AllocReport> {
    let scheme = SchemeRegistry::with_builtins().build(&scenario.alloc_scheme)?;
    let rule = scenario.coverage_rule()?;
    let outcome = greedy_allocate(&scenario.requests, &scheme, &rule)?;
    let levels = scheme
        .levels()
        .iter()
        .zip(&outcome.remaining)
        .map(|(l, &remaining)| LevelCoverage {
            level: l.index,
            gain_db: l.gain_db,
            coverage_beta: rule.beta_max(l.gain_db),
            cap: l.bandwidth_cap,
            remaining,
        })
        .collect();
    Ok(AllocReport {
        scheme: scheme.name().to_string(),
        coverage_margin: rule.margin,
        levels,
        assignments: outcome.assignments,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RandomChance {
    pub neighbors: u32,
    pub probability: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairingReport {
    pub edge: [f64; 2],
    pub center: [f64; 2],
    pub comparison: PairingComparison,
    pub random_success: Vec<RandomChance>,
}

impl Report for PairingReport {
    fn csv_header(&self) -> Vec<&'static str> {
        vec!["pattern", "ue", "beta0", "eta"]
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for (name, eval) in [
            ("direct", &self.comparison.direct),
            ("swapped", &self.comparison.swapped),
        ] {
            for k in 0..2 {
                rows.push(vec![
                    name.into(),
                    format!("edge{}", k + 1),
                    num(self.edge[k]),
                    num(eval.edge_eta[k]),
                ]);
            }
            for k in 0..2 {
                rows.push(vec![
                    name.into(),
                    format!("center{}", k + 1),
                    num(self.center[k]),
                    num(eval.center_eta[k]),
                ]);
            }
            rows.push(vec![
                name.into(),
                "min".into(),
                String::new(),
                num(eval.min_eta),
            ]);
        }
        rows
    }

    fn default_format(&self) -> Format {
        Format::Json
    }
}

pub fn run_pairing(scenario: &Scenario) -> Result<PairingReport> {
    let comparison = evaluate_pairings(
        scenario.pairing_edge,
        scenario.pairing_center,
        &scenario.link_params(),
        &scenario.layout()?,
    )?;
    let random_success = scenario
        .pairing_neighbors
        .iter()
        .map(|&n| RandomChance {
            neighbors: n,
            probability: optimal_pattern_probability(n),
        })
        .collect();
    Ok(PairingReport {
        edge: scenario.pairing_edge,
        center: scenario.pairing_center,
        comparison,
        random_success,
    })
}
