use std::sync::OnceLock;

const DEFAULT_EPS: f64 = 1e-9;

static EPS: OnceLock<f64> = OnceLock::new();

/// Global tolerance. `SC_EPS` in the environment overrides the default once,
/// at first use.
pub fn eps() -> f64 {
    *EPS.get_or_init(|| {
        std::env::var("SC_EPS")
            .ok()
            .and_then(|v| v.trim().parse::<f64>().ok())
            .filter(|v| v.is_finite() && *v >= 0.0)
            .unwrap_or(DEFAULT_EPS)
    })
}

/// Absolute slack added to a distance threshold `d`.
#[inline]
pub fn slack(d: f64) -> f64 {
    eps() * d.max(1.0)
}

/// Closed free-space membership test for a distance against threshold `d`.
#[inline]
pub fn within(dist: f64, d: f64) -> bool {
    dist <= d + slack(d)
}
