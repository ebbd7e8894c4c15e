//! Benchmark harness: every instance is solved once per mode and the report
//! lists per-run rows, per-mode totals, geometric means and win counts.

use std::fmt::Write as _;
use std::path::Path;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::bnc::{build_bgep, solve, BncConfig, MilpStatus, SeparationMode};
use crate::error::{Error, Result};
use crate::graph::BipartiteInstance;
use crate::io::read_instance;
use crate::preprocess::preprocess;

/// Times below this floor are clamped before taking logarithms.
pub const TIME_FLOOR: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BenchMode {
    pub separation: SeparationMode,
    pub preprocess: bool,
}

impl BenchMode {
    pub fn label(&self) -> String {
        let sep = match self.separation {
            SeparationMode::Dp => "dp",
            SeparationMode::Exhaustive => "exhaustive",
            SeparationMode::None => "none",
        };
        if self.preprocess {
            format!("sep={sep}+pre")
        } else {
            format!("sep={sep}")
        }
    }

    /// Both separators without preprocessing, and the DP separator with it.
    pub fn defaults() -> Vec<BenchMode> {
        vec![
            BenchMode {
                separation: SeparationMode::Dp,
                preprocess: false,
            },
            BenchMode {
                separation: SeparationMode::Exhaustive,
                preprocess: false,
            },
            BenchMode {
                separation: SeparationMode::Dp,
                preprocess: true,
            },
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub instance: String,
    pub mode: String,
    pub seconds: f64,
    pub nodes: usize,
    pub cuts: usize,
    /// Proven optimal edit count; `None` on a limit.
    pub optimum: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModeSummary {
    pub mode: String,
    pub total_seconds: f64,
    pub geometric_mean: f64,
    pub wins: usize,
    pub solved: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PreprocessRow {
    pub instance: String,
    pub fixed_percentage: f64,
    pub cut_percentage: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    pub modes: Vec<ModeSummary>,
    pub preprocess: Vec<PreprocessRow>,
    /// Instances on which two modes proved different optima.
    pub disagreements: Vec<String>,
}

/// `(t1 * ... * tn)^(1/n)`, computed as a mean of base-2 logarithms so that
/// powers of two come out exact.
pub fn geometric_mean(times: &[f64]) -> Option<f64> {
    if times.is_empty() || times.iter().any(|t| t.is_nan() || *t < 0.0) {
        return None;
    }
    let mean = times.iter().map(|t| t.max(TIME_FLOOR).log2()).sum::<f64>() / times.len() as f64;
    Some(mean.exp2())
}

/// Reads every `*.txt` instance in `dir`, sorted by file name. Unnamed
/// instances take their file stem as name.
pub fn load_dir(dir: &Path) -> Result<Vec<BipartiteInstance>> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "txt"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p)
                .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            let g = read_instance(&text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
            Ok(match g.name() {
                Some(_) => g,
                None => {
                    let stem = p
                        .file_stem()
                        .map(|s| s.to_string_lossy().into_owned())
                        .unwrap_or_default();
                    g.with_name(stem)
                }
            })
        })
        .collect()
}

pub fn run_bench(
    instances: &[BipartiteInstance],
    modes: &[BenchMode],
    time_limit: Option<Duration>,
) -> Result<BenchReport> {
    let mut rows = Vec::new();
    let mut pre_rows = Vec::new();
    let mut disagreements = Vec::new();
    for (k, g) in instances.iter().enumerate() {
        let name = g
            .name()
            .map_or_else(|| format!("instance{k}"), str::to_string);
        let pre = preprocess(g);
        pre_rows.push(PreprocessRow {
            instance: name.clone(),
            fixed_percentage: pre.stats.fixed_percentage,
            cut_percentage: pre.stats.cut_percentage,
        });
        let mut optima = Vec::new();
        for mode in modes {
            let mut model = build_bgep::<f64>(g);
            if mode.preprocess {
                model.apply_preprocess(&pre)?;
            }
            let mut cfg = BncConfig::default().with_separation(mode.separation);
            cfg.time_limit = time_limit;
            let r = solve(&model, &cfg)?;
            let optimum = match r.status {
                MilpStatus::Optimal => r.objective.map(|o| o.round() as usize),
                _ => None,
            };
            optima.extend(optimum);
            rows.push(BenchRow {
                instance: name.clone(),
                mode: mode.label(),
                seconds: r.wall_time.as_secs_f64(),
                nodes: r.nodes,
                cuts: r.cuts,
                optimum,
            });
        }
        if optima.windows(2).any(|w| w[0] != w[1]) {
            disagreements.push(name);
        }
    }
    let summaries = modes
        .iter()
        .map(|mode| {
            let label = mode.label();
            let mine: Vec<&BenchRow> = rows.iter().filter(|r| r.mode == label).collect();
            let times: Vec<f64> = mine.iter().map(|r| r.seconds).collect();
            let wins = mine
                .iter()
                .filter(|r| {
                    r.optimum.is_some()
                        && rows
                            .iter()
                            .filter(|o| o.instance == r.instance && o.optimum.is_some())
                            .all(|o| r.seconds <= o.seconds)
                })
                .count();
            ModeSummary {
                mode: label,
                total_seconds: times.iter().sum(),
                geometric_mean: geometric_mean(&times).unwrap_or(0.0),
                wins,
                solved: mine.iter().filter(|r| r.optimum.is_some()).count(),
            }
        })
        .collect();
    Ok(BenchReport {
        rows,
        modes: summaries,
        preprocess: pre_rows,
        disagreements,
    })
}

impl BenchReport {
    pub fn optima_agree(&self) -> bool {
        self.disagreements.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = self
            .rows
            .iter()
            .map(|r| r.instance.len())
            .max()
            .unwrap_or(8)
            .max(8);
        let _ = writeln!(
            out,
            "{:<w$}  {:<16} {:>10} {:>8} {:>8} {:>8}",
            "instance", "mode", "seconds", "nodes", "cuts", "optimum"
        );
        for r in &self.rows {
            let opt = r.optimum.map_or_else(|| "-".to_string(), |o| o.to_string());
            let _ = writeln!(
                out,
                "{:<w$}  {:<16} {:>10.4} {:>8} {:>8} {:>8}",
                r.instance, r.mode, r.seconds, r.nodes, r.cuts, opt
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{:<16} {:>12} {:>12} {:>6} {:>7}",
            "mode", "total (s)", "geo mean", "wins", "solved"
        );
        for m in &self.modes {
            let _ = writeln!(
                out,
                "{:<16} {:>12.4} {:>12.6} {:>6} {:>7}",
                m.mode, m.total_seconds, m.geometric_mean, m.wins, m.solved
            );
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "{:<w$}  {:>8} {:>8}", "instance", "fixed %", "cuts %");
        for p in &self.preprocess {
            let _ = writeln!(
                out,
                "{:<w$}  {:>8.2} {:>8.2}",
                p.instance, p.fixed_percentage, p.cut_percentage
            );
        }
        if !self.optima_agree() {
            let _ = writeln!(
                out,
                "\noptima differ across modes on: {}",
                self.disagreements.join(", ")
            );
        }
        out
    }
}
