use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::{CorrelationRecord, RunReport, SweepRow};
use crate::adiabatic::EvolutionMode;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 16] = [
    "regime",
    "mode",
    "step",
    "J_over_h",
    "N12",
    "N13",
    "N1_23",
    "delta_N2",
    "D12",
    "D13",
    "D1_23",
    "delta_D",
    "delta_D_mixed",
    "fidelity_vs_ground",
    "ground_prob",
    "epsilon",
];

/// 17 significant digits, enough to round-trip any `f64`.
fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Csv {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn ensure_parent(path: &Path) -> Result<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() => {
            fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))
        }
        _ => Ok(()),
    }
}

pub fn write_csv(records: &[CorrelationRecord], path: &Path) -> Result<()> {
    ensure_parent(path)?;
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    w.write_record(CSV_HEADER).map_err(|e| csv_err(path, e))?;
    for r in records {
        let row = [
            r.regime.to_string(),
            r.mode.to_string(),
            r.step.to_string(),
            num(r.j_over_h),
            num(r.n12),
            num(r.n13),
            num(r.n1_23),
            num(r.delta_n2),
            num(r.d12),
            num(r.d13),
            num(r.d1_23),
            num(r.delta_d),
            num(r.delta_d_mixed),
            num(r.fidelity_vs_ground),
            num(r.ground_prob),
            num(r.epsilon),
        ];
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

pub fn read_csv(path: &Path) -> Result<Vec<CorrelationRecord>> {
    let mut rdr = csv::Reader::from_path(path).map_err(|e| csv_err(path, e))?;
    let header = rdr.headers().map_err(|e| csv_err(path, e))?;
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        return Err(csv_err(path, format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for (line, row) in rdr.records().enumerate() {
        let row = row.map_err(|e| csv_err(path, e))?;
        let bad = |col: usize| csv_err(path, format!("row {}: bad value in column {}", line + 1, CSV_HEADER[col]));
        let f = |col: usize| row[col].parse::<f64>().map_err(|_| bad(col));
        out.push(CorrelationRecord {
            regime: row[0].parse().map_err(|_| bad(0))?,
            mode: row[1].parse().map_err(|_| bad(1))?,
            step: row[2].parse().map_err(|_| bad(2))?,
            j_over_h: f(3)?,
            n12: f(4)?,
            n13: f(5)?,
            n1_23: f(6)?,
            delta_n2: f(7)?,
            d12: f(8)?,
            d13: f(9)?,
            d1_23: f(10)?,
            delta_d: f(11)?,
            delta_d_mixed: f(12)?,
            fidelity_vs_ground: f(13)?,
            ground_prob: f(14)?,
            epsilon: f(15)?,
        });
    }
    Ok(out)
}

/// `key = value` lines, one block per pipeline, keys prefixed
/// `<regime>.<mode>.`.
pub fn write_summary(report: &RunReport, path: &Path) -> Result<()> {
    let mut s = String::new();
    let _ = writeln!(s, "records = {}", report.records.len());
    for p in &report.summaries {
        let k = format!("{}.{}", p.regime, p.mode);
        let _ = writeln!(s, "{k}.epsilon_max = {}", num(p.epsilon_max));
        let _ = writeln!(s, "{k}.final_ground_prob = {}", num(p.final_ground_prob));
        let _ = writeln!(s, "{k}.min_ground_prob = {}", num(p.min_ground_prob));
        let _ = writeln!(s, "{k}.min_fidelity_vs_ground = {}", num(p.min_fidelity));
        let _ = writeln!(s, "{k}.final_delta_N2 = {}", num(p.final_delta_n2));
        let _ = writeln!(s, "{k}.final_delta_D = {}", num(p.final_delta_d));
        let _ = writeln!(s, "{k}.final_delta_D_mixed = {}", num(p.final_delta_d_mixed));
        let _ = writeln!(s, "{k}.final_delta_D_nmr = {}", num(p.final_delta_d_nmr));
        let _ = writeln!(s, "{k}.max_N1_23_nmr = {}", num(p.max_negativity_nmr));
    }
    for (i, w) in report.warnings.iter().enumerate() {
        let _ = writeln!(s, "warning.{i} = {w}");
    }
    ensure_parent(path)?;
    fs::write(path, s).map_err(|e| Error::io(path, e))
}

pub fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    ensure_parent(path)?;
    let mut w = csv::Writer::from_path(path).map_err(|e| csv_err(path, e))?;
    let mut header = vec!["regime".to_string(), "kappa".into(), "steps".into(), "epsilon_max".into()];
    header.extend(EvolutionMode::ALL.iter().map(|m| format!("final_ground_prob_{m}")));
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for r in rows {
        let mut row = vec![
            r.regime.to_string(),
            r.kappa.map(num).unwrap_or_default(),
            r.steps.to_string(),
            num(r.epsilon_max),
        ];
        row.extend(r.final_ground_prob.iter().map(|&p| num(p)));
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::adiabatic::Regime;
    use proptest::prelude::*;

    fn record(step: usize, x: f64) -> CorrelationRecord {
        CorrelationRecord {
            regime: Regime::NonFrustrated,
            mode: EvolutionMode::Trotter2,
            step,
            j_over_h: -x,
            n12: x,
            n13: x / 3.0,
            n1_23: x.sqrt(),
            delta_n2: x * x,
            d12: 0.1 + x,
            d13: f64::MIN_POSITIVE,
            d1_23: 1.0 / 3.0,
            delta_d: -x,
            delta_d_mixed: 1e-300,
            fidelity_vs_ground: 0.999_999_999_999_999_9,
            ground_prob: 1.0,
            epsilon: f64::NAN,
        }
    }

    fn same_bits(a: &CorrelationRecord, b: &CorrelationRecord) -> bool {
        let fa = [a.j_over_h, a.n12, a.n13, a.n1_23, a.delta_n2, a.d12, a.d13, a.d1_23, a.delta_d, a.delta_d_mixed, a.fidelity_vs_ground, a.ground_prob, a.epsilon];
        let fb = [b.j_over_h, b.n12, b.n13, b.n1_23, b.delta_n2, b.d12, b.d13, b.d1_23, b.delta_d, b.delta_d_mixed, b.fidelity_vs_ground, b.ground_prob, b.epsilon];
        (a.regime, a.mode, a.step) == (b.regime, b.mode, b.step)
            && fa.iter().zip(fb).all(|(x, y)| x.to_bits() == y.to_bits() || (x.is_nan() && y.is_nan()))
    }

    #[test]
    fn header_only_for_empty() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("empty.csv");
        write_csv(&[], &p).unwrap();
        let text = fs::read_to_string(&p).unwrap();
        assert_eq!(text, format!("{}\n", CSV_HEADER.join(",")));
        assert!(read_csv(&p).unwrap().is_empty());
    }

    #[test]
    fn rejects_renamed_column() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.csv");
        fs::write(&p, CSV_HEADER.join(",").replace("N12", "N_12") + "\n").unwrap();
        assert!(matches!(read_csv(&p), Err(Error::Csv { .. })));
    }

    #[test]
    fn missing_directory_is_created_and_io_errors_carry_path() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("a/b/run.csv");
        write_csv(&[record(1, 0.5)], &p).unwrap();
        assert!(p.exists());
        let blocked = dir.path().join("a/b/run.csv/inner.csv");
        let err = write_csv(&[], &blocked).unwrap_err();
        assert!(err.to_string().contains("run.csv"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn csv_round_trip_is_bit_exact(xs in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 0..8)) {
            let records: Vec<_> = xs.iter().enumerate().map(|(i, &x)| record(i + 1, x)).collect();
            let dir = tempfile::tempdir().unwrap();
            let p = dir.path().join("rt.csv");
            write_csv(&records, &p).unwrap();
            let back = read_csv(&p).unwrap();
            prop_assert_eq!(back.len(), records.len());
            for (a, b) in records.iter().zip(&back) {
                prop_assert!(same_bits(a, b));
            }
        }
    }
}
