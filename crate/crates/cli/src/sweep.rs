//! One-parameter state families written out as CSV tables.

use std::io::Write;

use clap::ValueEnum;
use gauss_renyi::correlations::two_mode_partition;
use gauss_renyi::{
    classical_correlations, discord, e2_two_mode, mutual_information, ppt_min_symplectic_eigenvalue, reduce,
    renyi2_entropy, residual_d2, residual_e2, three_mode_pure_cm, tmss_cm, von_neumann_entropy, CovarianceMatrix,
    Direction, ThreeModeLocalInvariants,
};

use crate::format::num;
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Two-mode squeezed vacuum, parameter `r`.
    Tmss,
    /// Pure three-mode state with `a1 = a2 = a3 = a`, parameter `a`.
    Ghz,
    /// `nu` times the two-mode squeezed vacuum, parameter `r`.
    SqueezedThermal,
}

pub const TWO_MODE_MEASURES: &[&str] = &[
    "renyi2", "renyi2_A", "renyi2_B", "vn_A", "mutual", "classical", "classical_BA", "discord", "discord_BA",
    "entanglement", "ppt_nu",
];
pub const GHZ_MEASURES: &[&str] =
    &["renyi2_A", "entanglement", "pair_entanglement", "residual", "residual_discord"];

impl Family {
    pub fn measures(self) -> &'static [&'static str] {
        match self {
            Family::Ghz => GHZ_MEASURES,
            _ => TWO_MODE_MEASURES,
        }
    }
}

/// Inclusive grid `start, start + step, ...` up to `stop`, from `"start:stop:step"`.
pub fn parse_range(text: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    let bad = || Failure::usage(format!("bad --param-range '{text}', expected start:stop:step"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let v: Vec<f64> = parts.iter().map(|p| p.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| bad())?;
    let (start, stop, step) = (v[0], v[1], v[2]);
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) || step <= 0.0 || stop < start {
        return Err(Failure::usage(format!(
            "--param-range '{text}' must be increasing with a positive step"
        )));
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(Failure::usage("--param-range has more than 10^6 points"));
    }
    Ok((0..count).map(|i| start + step * i as f64).collect())
}

fn two_mode_state(family: Family, param: f64, nu: f64) -> Result<CovarianceMatrix, Failure> {
    let base = tmss_cm(param);
    Ok(match family {
        Family::SqueezedThermal => CovarianceMatrix::new(base.matrix() * nu)?,
        _ => base,
    })
}

fn two_mode_measure(cm: &CovarianceMatrix, measure: &str) -> Result<f64, Failure> {
    let p = two_mode_partition();
    Ok(match measure {
        "renyi2" => renyi2_entropy(cm)?,
        "renyi2_A" => renyi2_entropy(&reduce(cm, &[0])?)?,
        "renyi2_B" => renyi2_entropy(&reduce(cm, &[1])?)?,
        "vn_A" => von_neumann_entropy(&reduce(cm, &[0])?)?,
        "mutual" => mutual_information(cm, &p)?,
        "classical" => classical_correlations(cm, &p, Direction::AGivenB)?.value,
        "classical_BA" => classical_correlations(cm, &p, Direction::BGivenA)?.value,
        "discord" => discord(cm, &p, Direction::AGivenB)?.value,
        "discord_BA" => discord(cm, &p, Direction::BGivenA)?.value,
        "entanglement" => e2_two_mode(cm)?.value,
        "ppt_nu" => ppt_min_symplectic_eigenvalue(cm)?,
        other => return Err(Failure::usage(format!("unknown measure '{other}'"))),
    })
}

fn ghz_measure(a: f64, measure: &str) -> Result<f64, Failure> {
    let inv = ThreeModeLocalInvariants::new(a, a, a)?;
    Ok(match measure {
        "renyi2_A" | "entanglement" => a.ln(),
        "pair_entanglement" => e2_two_mode(&reduce(&three_mode_pure_cm(&inv)?, &[0, 1])?)?.value,
        "residual" => residual_e2(&inv, 0)?,
        "residual_discord" => residual_d2(&inv, 0)?,
        other => return Err(Failure::usage(format!("unknown measure '{other}'"))),
    })
}

/// Writes the header `param,<measures>` and one row per grid point.
pub fn write_sweep<W: Write>(
    out: W,
    family: Family,
    grid: &[f64],
    measures: &[String],
    nu: f64,
) -> Result<(), Failure> {
    if measures.is_empty() {
        return Err(Failure::usage("--measures needs at least one measure"));
    }
    for m in measures {
        if !family.measures().contains(&m.as_str()) {
            return Err(Failure::usage(format!(
                "measure '{m}' is not available for this family; choose from {}",
                family.measures().join(",")
            )));
        }
    }
    let mut rows = Vec::with_capacity(grid.len());
    for &x in grid {
        let mut row = vec![num(x)];
        if family == Family::Ghz {
            for m in measures {
                row.push(num(ghz_measure(x, m)?));
            }
        } else {
            let cm = two_mode_state(family, x, nu)?;
            for m in measures {
                row.push(num(two_mode_measure(&cm, m)?));
            }
        }
        rows.push(row);
    }
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    let header: Vec<&str> = std::iter::once("param").chain(measures.iter().map(String::as_str)).collect();
    w.write_record(&header).map_err(io_failure)?;
    for row in rows {
        w.write_record(&row).map_err(io_failure)?;
    }
    w.flush().map_err(|e| Failure::usage(format!("cannot write CSV: {e}")))
}

fn io_failure(e: csv::Error) -> Failure {
    Failure::usage(format!("cannot write CSV: {e}"))
}
