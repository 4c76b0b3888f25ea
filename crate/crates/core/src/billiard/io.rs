use serde::{Deserialize, Serialize};

use super::TrajectoryWindow;

/// One CSV row per base arc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrajectoryRow {
    pub index: i64,
    pub theta_rad: f64,
    pub phi_rad: f64,
    pub side: usize,
    pub hit_re: f64,
    pub hit_im: f64,
}

impl TrajectoryWindow {
    pub fn rows(&self) -> Vec<TrajectoryRow> {
        self.indexed()
            .map(|(index, a)| TrajectoryRow {
                index,
                theta_rad: a.theta().rad(),
                phi_rad: a.phi().rad(),
                side: a.hit_side,
                hit_re: a.hit_point.re(),
                hit_im: a.hit_point.im(),
            })
            .collect()
    }
}

/// The window as CSV with a header row.
pub fn trajectory_csv(w: &TrajectoryWindow) -> Result<String, csv::Error> {
    let mut out = csv::Writer::from_writer(Vec::new());
    for row in w.rows() {
        out.serialize(row)?;
    }
    let bytes = out.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

/// The pointed code on one line, with a dot before index 0.
pub fn code_text(w: &TrajectoryWindow) -> String {
    format!("{}\n", w.code())
}
