//! Closed-form interference alignment for the 3-user `(2×2, 1)^3` channel.
//!
//! Receivers 2 and 3 are aligned by construction:
//! `V_2 = H_32⁻¹ H_31 V_1`, `V_3 = H_23⁻¹ H_21 V_1`. Receiver 1 is aligned when
//! `V_1` is an eigenvector of `H_31⁻¹ H_32 H_12⁻¹ H_13 H_23⁻¹ H_21`. Each
//! decoder is then the unit vector orthogonal to its one-dimensional
//! interference subspace.

use ia_core::{leakage, rank_check, BeamformerSet, CMatrix, ChannelSet, IaError, ScenarioSpec, DEFAULT_RANK_TOL};
use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Smallest acceptable `|det H| / ‖H‖²` before a channel counts as singular.
const CONDITION_FLOOR: f64 = 1e-12;

type M2 = Matrix2<Complex64>;
type V2 = Vector2<Complex64>;

pub fn oracle_scenario() -> ScenarioSpec {
    ScenarioSpec::symmetric(3, 2, 2, 1).expect("valid scenario")
}

fn link(h: &ChannelSet, rx: usize, tx: usize) -> M2 {
    let m = h.link(rx, tx);
    M2::new(m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)])
}

fn inverse(m: &M2, name: &str) -> Result<M2, IaError> {
    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let det = m.determinant().norm();
    if det.is_nan() || det <= CONDITION_FLOOR * scale {
        return Err(IaError::IllConditioned(format!("{name} is numerically singular")));
    }
    m.try_inverse()
        .ok_or_else(|| IaError::IllConditioned(format!("{name} is not invertible")))
}

fn unit(v: V2) -> Result<V2, IaError> {
    let n = v.norm();
    if !(n > 0.0 && n.is_finite()) {
        return Err(IaError::IllConditioned("zero or non-finite beamformer".into()));
    }
    Ok(v / Complex64::from(n))
}

/// One eigenvector of a 2×2 complex matrix.
fn eigenvector(e: &M2) -> Result<V2, IaError> {
    let (a, b, c, d) = (e[(0, 0)], e[(0, 1)], e[(1, 0)], e[(1, 1)]);
    let half_trace = (a + d) * 0.5;
    let disc = (half_trace * half_trace - (a * d - b * c)).sqrt();
    let lambda = half_trace + disc;
    // rows of (E − λI) are both orthogonal to the eigenvector; use the larger
    let first = V2::new(b, lambda - a);
    let second = V2::new(lambda - d, c);
    let v = if first.norm() >= second.norm() { first } else { second };
    if v.norm() == 0.0 {
        // E is a multiple of the identity: any vector works
        return Ok(V2::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)));
    }
    unit(v)
}

/// Unit `u` with `u^H w = 0`.
fn orthogonal_to(w: V2) -> Result<V2, IaError> {
    unit(V2::new(-w[1].conj(), w[0].conj()))
}

pub fn closed_form_3user(h: &ChannelSet) -> Result<BeamformerSet, IaError> {
    let spec = oracle_scenario();
    if h.spec() != &spec {
        return Err(IaError::InvalidScenario(format!(
            "closed form needs {spec}, got {}",
            h.spec()
        )));
    }
    let hm = |i: usize, j: usize| link(h, i - 1, j - 1);
    let e = inverse(&hm(3, 1), "H31")?
        * hm(3, 2)
        * inverse(&hm(1, 2), "H12")?
        * hm(1, 3)
        * inverse(&hm(2, 3), "H23")?
        * hm(2, 1);
    let v1 = eigenvector(&e)?;
    let v2 = unit(inverse(&hm(3, 2), "H32")? * hm(3, 1) * v1)?;
    let v3 = unit(inverse(&hm(2, 3), "H23")? * hm(2, 1) * v1)?;
    let u1 = orthogonal_to(hm(1, 2) * v2)?;
    let u2 = orthogonal_to(hm(2, 1) * v1)?;
    let u3 = orthogonal_to(hm(3, 1) * v1)?;

    let col = |v: V2| CMatrix::from_column_slice(2, 1, v.as_slice());
    BeamformerSet::new(&spec, vec![col(v1), col(v2), col(v3)], vec![col(u1), col(u2), col(u3)])
}

/// Outcome of the closed form on one seeded channel draw.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleCheck {
    pub channel_seed: u64,
    pub closed_form_il: f64,
    pub random_il: f64,
    pub rank_satisfied: bool,
}

impl OracleCheck {
    /// `log10(random / closed-form)`; +∞ when the closed form is exact.
    pub fn orders_below_random(&self) -> f64 {
        (self.random_il / self.closed_form_il).log10()
    }
}

/// Compares the closed form with random unit-column beamformers on
/// `instances` channel draws seeded `seed, seed + 1, …`.
pub fn verify_closed_form(instances: usize, seed: u64) -> Result<Vec<OracleCheck>, IaError> {
    let spec = oracle_scenario();
    (0..instances as u64)
        .map(|k| {
            let channel_seed = seed.wrapping_add(k);
            let h = ChannelSet::generate(&spec, channel_seed);
            let solved = closed_form_3user(&h)?;
            let mut rng = ChaCha8Rng::seed_from_u64(channel_seed ^ 0x5eed);
            let random = BeamformerSet::random(&spec, &mut rng).normalize_columns()?;
            Ok(OracleCheck {
                channel_seed,
                closed_form_il: leakage(&h, &solved)?,
                random_il: leakage(&h, &random)?,
                rank_satisfied: rank_check(&h, &solved, DEFAULT_RANK_TOL)?.satisfied,
            })
        })
        .collect()
}
