//! Precoders `V_i`, decoders `U_i`, and their flat real encoding.

use num_complex::Complex64;
use rand::Rng;

use crate::channel::{complex_gaussian, CMatrix};
use crate::error::{IaError, Result};
use crate::scenario::ScenarioSpec;

/// Columns with a norm below this are treated as zero.
pub const DEGENERATE_NORM: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct BeamformerSet {
    precoders: Vec<CMatrix>,
    decoders: Vec<CMatrix>,
}

/// Real decision vector of length `2 Σ (M_i + N_i) d_i`.
///
/// Layout: `vec(V_1) … vec(V_K)` followed by `vec(U_1^H) … vec(U_K^H)`,
/// column-major, each complex entry stored as an adjacent `(re, im)` pair.
#[derive(Debug, Clone, PartialEq)]
pub struct DecisionVector(Vec<f64>);

impl DecisionVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for DecisionVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

impl BeamformerSet {
    pub fn new(spec: &ScenarioSpec, precoders: Vec<CMatrix>, decoders: Vec<CMatrix>) -> Result<Self> {
        let set = Self { precoders, decoders };
        set.check_shapes(spec)?;
        Ok(set)
    }

    pub fn zeros(spec: &ScenarioSpec) -> Self {
        let k = spec.users();
        Self {
            precoders: (0..k).map(|i| CMatrix::zeros(spec.tx_antennas()[i], spec.streams()[i])).collect(),
            decoders: (0..k).map(|i| CMatrix::zeros(spec.rx_antennas()[i], spec.streams()[i])).collect(),
        }
    }

    /// Entries i.i.d. `CN(0, 1)`.
    pub fn random<R: Rng + ?Sized>(spec: &ScenarioSpec, rng: &mut R) -> Self {
        let mut set = Self::zeros(spec);
        for m in set.precoders.iter_mut().chain(set.decoders.iter_mut()) {
            for z in m.iter_mut() {
                *z = complex_gaussian(rng);
            }
        }
        set
    }

    pub fn check_shapes(&self, spec: &ScenarioSpec) -> Result<()> {
        let k = spec.users();
        if self.precoders.len() != k || self.decoders.len() != k {
            return Err(IaError::ShapeMismatch(format!(
                "{} precoders / {} decoders for {k} users",
                self.precoders.len(),
                self.decoders.len()
            )));
        }
        for i in 0..k {
            let d = spec.streams()[i];
            if self.precoders[i].shape() != (spec.tx_antennas()[i], d) {
                return Err(IaError::ShapeMismatch(format!(
                    "V[{i}] is {:?}, expected {:?}",
                    self.precoders[i].shape(),
                    (spec.tx_antennas()[i], d)
                )));
            }
            if self.decoders[i].shape() != (spec.rx_antennas()[i], d) {
                return Err(IaError::ShapeMismatch(format!(
                    "U[{i}] is {:?}, expected {:?}",
                    self.decoders[i].shape(),
                    (spec.rx_antennas()[i], d)
                )));
            }
        }
        Ok(())
    }

    pub fn users(&self) -> usize {
        self.precoders.len()
    }

    pub fn precoder(&self, i: usize) -> &CMatrix {
        &self.precoders[i]
    }

    pub fn decoder(&self, i: usize) -> &CMatrix {
        &self.decoders[i]
    }

    pub fn precoder_mut(&mut self, i: usize) -> &mut CMatrix {
        &mut self.precoders[i]
    }

    pub fn decoder_mut(&mut self, i: usize) -> &mut CMatrix {
        &mut self.decoders[i]
    }

    /// Multiplies every entry of every `U_i` and `V_i` by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Self {
        Self {
            precoders: self.precoders.iter().map(|m| m * Complex64::from(alpha)).collect(),
            decoders: self.decoders.iter().map(|m| m * Complex64::from(alpha)).collect(),
        }
    }

    /// Rescales each column of each beamformer to unit Euclidean norm.
    pub fn normalize_columns(&self) -> Result<Self> {
        let mut out = self.clone();
        for (kind, mats) in [("V", &mut out.precoders), ("U", &mut out.decoders)] {
            for (i, m) in mats.iter_mut().enumerate() {
                for (c, mut col) in m.column_iter_mut().enumerate() {
                    let norm = col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
                    if norm.is_nan() || norm < DEGENERATE_NORM {
                        return Err(IaError::DegenerateColumn {
                            which: format!("{kind}[{i}]"),
                            column: c,
                            norm,
                        });
                    }
                    col /= Complex64::from(norm);
                }
            }
        }
        Ok(out)
    }

    /// Flattens into the real decision vector.
    pub fn encode(&self, spec: &ScenarioSpec) -> Result<DecisionVector> {
        self.check_shapes(spec)?;
        let mut x = Vec::with_capacity(spec.dimension());
        for v in &self.precoders {
            // nalgebra iterates column-major
            for z in v.iter() {
                x.push(z.re);
                x.push(z.im);
            }
        }
        for u in &self.decoders {
            // vec(U^H): column p of U^H is the conjugate of row p of U
            for p in 0..u.nrows() {
                for m in 0..u.ncols() {
                    let z = u[(p, m)];
                    x.push(z.re);
                    x.push(-z.im);
                }
            }
        }
        Ok(DecisionVector(x))
    }

    /// Exact inverse of [`encode`](Self::encode).
    pub fn decode(x: &[f64], spec: &ScenarioSpec) -> Result<Self> {
        let expected = spec.dimension();
        if x.len() != expected {
            return Err(IaError::WrongLength { expected, got: x.len() });
        }
        let mut set = Self::zeros(spec);
        let mut pairs = x.chunks_exact(2);
        for v in set.precoders.iter_mut() {
            for z in v.iter_mut() {
                let p = pairs.next().expect("length checked");
                *z = Complex64::new(p[0], p[1]);
            }
        }
        for u in set.decoders.iter_mut() {
            for p in 0..u.nrows() {
                for m in 0..u.ncols() {
                    let pair = pairs.next().expect("length checked");
                    u[(p, m)] = Complex64::new(pair[0], -pair[1]);
                }
            }
        }
        Ok(set)
    }
}
