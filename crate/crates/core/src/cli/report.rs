//! CSV serialization of bound reports and stopping-time curves.

use crate::bounds::BoundReport;
use crate::stopping::StoppingTimeCurve;

/// Column set of `run` and `divergence-scan` output.
pub const REPORT_COLUMNS: [&str; 18] = [
    "model",
    "gamma",
    "omega",
    "init",
    "tau",
    "steps",
    "bures_angle",
    "path_length",
    "ratio",
    "tau_min",
    "tau_min_cell",
    "tau_av",
    "tau_op",
    "tau_hs",
    "tau_tr",
    "verdict",
    "gap",
    "tolerance",
];

/// Column set of `epsilon-sweep` output.
pub const SWEEP_COLUMNS: [&str; 3] = ["epsilon", "time", "saturated"];

/// 17 significant digits, enough to round-trip any `f64`.
pub fn real(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_real(x: Option<f64>) -> String {
    x.map(real).unwrap_or_default()
}

/// Model metadata repeated on every row.
#[derive(Debug, Clone)]
pub struct RowContext {
    pub model: String,
    pub gamma: Option<f64>,
    pub omega: Option<f64>,
    pub init: String,
}

/// One flattened report row. `steps` is the number of grid steps up to
/// `tau`.
pub fn report_record(ctx: &RowContext, r: &BoundReport) -> Vec<String> {
    vec![
        ctx.model.clone(),
        opt_real(ctx.gamma),
        opt_real(ctx.omega),
        ctx.init.clone(),
        real(r.tau),
        r.grid_index.to_string(),
        real(r.bures_angle),
        real(r.path_length),
        real(r.ratio),
        real(r.tau_min.time),
        real(r.tau_min.cell_width),
        real(r.tau_av),
        opt_real(r.tau_op),
        opt_real(r.tau_hs),
        opt_real(r.tau_tr),
        r.verdict.kind.to_string(),
        real(r.verdict.gap),
        real(r.verdict.tolerance),
    ]
}

fn finish(w: csv::Writer<Vec<u8>>) -> Vec<u8> {
    w.into_inner().expect("in-memory writer cannot fail")
}

pub fn reports_csv(ctx: &RowContext, reports: &[BoundReport]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(REPORT_COLUMNS).expect("in-memory write");
    for r in reports {
        w.write_record(report_record(ctx, r)).expect("in-memory write");
    }
    finish(w)
}

pub fn sweep_csv(curve: &StoppingTimeCurve) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SWEEP_COLUMNS).expect("in-memory write");
    for e in &curve.entries {
        w.write_record([real(e.epsilon), opt_real(e.time), e.saturated.to_string()])
            .expect("in-memory write");
    }
    let mut out = finish(w);
    out.extend_from_slice(format!("# floor_epsilon={}\n", real(curve.floor_epsilon)).as_bytes());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stopping::StoppingEntry;

    #[test]
    fn round_trip_digits() {
        for x in [std::f64::consts::PI / 3.0, 1e-300, 0.1, -2.5e17] {
            assert_eq!(real(x).parse::<f64>().unwrap(), x);
        }
        assert_eq!(real(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn sweep_layout() {
        let curve = StoppingTimeCurve {
            entries: vec![
                StoppingEntry {
                    epsilon: 0.1,
                    time: Some(1.0),
                    saturated: false,
                },
                StoppingEntry {
                    epsilon: 1e-20,
                    time: None,
                    saturated: true,
                },
            ],
            floor_epsilon: 1e-15,
            distances: vec![],
        };
        let text = String::from_utf8(sweep_csv(&curve)).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0], "epsilon,time,saturated");
        assert_eq!(lines[2], "9.9999999999999995e-21,,true");
        assert_eq!(lines[3], format!("# floor_epsilon={}", real(1e-15)));
    }
}
