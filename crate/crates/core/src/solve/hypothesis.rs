//! Grid checks of the pointwise hypotheses on `F` and `h`.

use serde::{Deserialize, Serialize};

use super::PsiFunction;
use crate::ring::{GridSpec, RFunc, VecFn};

/// Slack allowed on `F F* <= 1`.
pub const FF_SLACK: f64 = 1e-9;
/// Rounding slack on the sign of a margin.
pub const MARGIN_SLACK: f64 = 1e-12;
/// Largest constant accepted in `M ||F|| >= |h^q|`.
pub const RADICAL_MAX_M: f64 = 1e3;

/// Which pointwise inequality is tested.
#[derive(Debug, Clone, PartialEq)]
pub enum HypothesisForm {
    /// `F F* psi(F F*) >= |h|`.
    Weighted(PsiFunction),
    /// `(F F*)^(1/2) >= |h|`; then `h^3` lies in the ideal.
    Cube,
    /// `M (F F*)^(1/2) >= |h^q|` with `M = RADICAL_MAX_M`.
    Radical { q: u32 },
}

/// Smallest value of `lhs(z) - rhs(z)` over the grid, and where it occurs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub form: String,
    pub margin: f64,
    pub worst_point: [f64; 2],
    pub max_ff: f64,
    pub ff_ok: bool,
    pub ok: bool,
}

impl HypothesisReport {
    pub fn diagnostic(&self) -> String {
        let [x, y] = self.worst_point;
        if !self.ff_ok {
            format!("F F* reaches {:.6e} > 1; worst margin {:.6e} at z = {x:+.6}{y:+.6}i", self.max_ff, self.margin)
        } else {
            format!("{} fails with margin {:.6e} at z = {x:+.6}{y:+.6}i", self.form, self.margin)
        }
    }
}

pub fn hypothesis_check(f: &VecFn, h: &RFunc, form: &HypothesisForm, grid: &GridSpec) -> HypothesisReport {
    let fl: Vec<_> = f.iter().map(RFunc::to_float).collect();
    let hl = h.to_float();
    let mut margin = f64::INFINITY;
    let mut worst = [0.0, 0.0];
    let mut max_ff: f64 = 0.0;
    for z in grid.points() {
        let t: f64 = fl.iter().map(|e| e.eval(z).norm_sqr()).sum();
        let hz = if h.is_zero() { 0.0 } else { hl.eval(z).norm() };
        max_ff = max_ff.max(t);
        let m = match form {
            HypothesisForm::Weighted(psi) => t * psi.eval(t) - hz,
            HypothesisForm::Cube => t.sqrt() - hz,
            HypothesisForm::Radical { q } => RADICAL_MAX_M * t.sqrt() - hz.powi(*q as i32),
        };
        if m < margin {
            margin = m;
            worst = [z.re, z.im];
        }
    }
    let form_name = match form {
        HypothesisForm::Weighted(_) => "F F* psi(F F*) >= |h|".to_string(),
        HypothesisForm::Cube => "(F F*)^(1/2) >= |h|".to_string(),
        HypothesisForm::Radical { q } => format!("{RADICAL_MAX_M} (F F*)^(1/2) >= |h^{q}|"),
    };
    // the radical form tolerates F F* > 1 because M absorbs scaling
    let ff_ok = matches!(form, HypothesisForm::Radical { .. }) || max_ff <= 1.0 + FF_SLACK;
    HypothesisReport {
        form: form_name,
        margin,
        worst_point: worst,
        max_ff,
        ff_ok,
        ok: ff_ok && margin >= -MARGIN_SLACK,
    }
}
