use crate::{polyline, GenError};
use sc_geometry::{Point2, SCInstance, Trajectory};

/// `T = A ∘ T₁ ∘ B ∘ A ∘ T₂ ∘ B` with `A, B = (∓4λ, 0)`, `m = 2`,
/// `ℓ = 8λ`, `d = 1`. YES exactly when `d_dF(T₁, T₂) ≤ 1`.
pub fn gen_bringmann(t1: &Trajectory, t2: &Trajectory) -> Result<SCInstance, GenError> {
    if t1.is_empty() || t2.is_empty() {
        return Err(GenError::Empty);
    }
    let r = t1.vertices().iter().chain(t2.vertices()).map(|p| p.norm()).fold(0.0, f64::max);
    let lambda = t1.total_length() + t2.total_length() + 2.0 * r;
    let (a, b) = (Point2::new(-4.0 * lambda, 0.0), Point2::new(4.0 * lambda, 0.0));
    let mut v = vec![a];
    v.extend_from_slice(t1.vertices());
    v.extend([b, a]);
    v.extend_from_slice(t2.vertices());
    v.push(b);
    Ok(SCInstance::new(polyline(v), 2, 8.0 * lambda, 1.0))
}
