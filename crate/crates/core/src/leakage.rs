//! Alignment residuals and the interference-leakage objective.

use num_complex::Complex64;

use crate::beamformer::BeamformerSet;
use crate::channel::ChannelSet;
use crate::error::{IaError, Result};
use crate::scenario::ScenarioSpec;

/// Stacked `vec(U_i^H H_ij V_j)` blocks over ordered pairs `i ≠ j`,
/// `i` outer and `j` inner.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualVector {
    values: Vec<Complex64>,
    // (i, j, offset, len)
    blocks: Vec<(usize, usize, usize, usize)>,
}

impl ResidualVector {
    pub fn as_slice(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Block `r_ij`, or `None` when `i == j` or out of range.
    pub fn block(&self, i: usize, j: usize) -> Option<&[Complex64]> {
        self.blocks
            .iter()
            .find(|b| b.0 == i && b.1 == j)
            .map(|&(_, _, off, len)| &self.values[off..off + len])
    }

    /// `r^H r`.
    pub fn squared_norm(&self) -> f64 {
        self.values.iter().map(|z| z.norm_sqr()).sum()
    }
}

fn check_pair(h: &ChannelSet, b: &BeamformerSet) -> Result<()> {
    b.check_shapes(h.spec())
}

pub fn residuals(h: &ChannelSet, b: &BeamformerSet) -> Result<ResidualVector> {
    check_pair(h, b)?;
    let spec = h.spec();
    let k = spec.users();
    let mut values = Vec::with_capacity(spec.count_equations());
    let mut blocks = Vec::with_capacity(k * (k - 1));
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let block = b.decoder(i).adjoint() * h.link(i, j) * b.precoder(j);
            blocks.push((i, j, values.len(), block.len()));
            values.extend(block.iter().copied());
        }
    }
    Ok(ResidualVector { values, blocks })
}

/// Interference leakage `f = r^H r`.
pub fn leakage(h: &ChannelSet, b: &BeamformerSet) -> Result<f64> {
    check_pair(h, b)?;
    let spec = h.spec();
    let k = spec.users();
    let mut total = 0.0;
    for i in 0..k {
        let uh = b.decoder(i).adjoint();
        for j in 0..k {
            if i != j {
                total += (&uh * h.link(i, j) * b.precoder(j)).norm_squared();
            }
        }
    }
    Ok(total)
}

/// Leakage after rescaling every beamformer column to unit norm.
pub fn leakage_normalized(h: &ChannelSet, b: &BeamformerSet) -> Result<f64> {
    leakage(h, &b.normalize_columns()?)
}

/// Allocation-light leakage evaluation straight from a decision vector.
///
/// This is the optimizer hot path; it reads `U_i^H` entries directly from
/// their stored (already conjugated) positions.
#[derive(Debug, Clone)]
pub struct LeakageEvaluator {
    channels: ChannelSet,
    precoder_offsets: Vec<usize>,
    decoder_offsets: Vec<usize>,
    scratch_len: usize,
}

impl LeakageEvaluator {
    pub fn new(channels: ChannelSet) -> Self {
        let spec = channels.spec().clone();
        let k = spec.users();
        let mut offset = 0;
        let mut precoder_offsets = Vec::with_capacity(k);
        for i in 0..k {
            precoder_offsets.push(offset);
            offset += 2 * spec.tx_antennas()[i] * spec.streams()[i];
        }
        let mut decoder_offsets = Vec::with_capacity(k);
        for i in 0..k {
            decoder_offsets.push(offset);
            offset += 2 * spec.rx_antennas()[i] * spec.streams()[i];
        }
        let scratch_len = (0..k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| spec.rx_antennas()[i] * spec.streams()[j])
            .max()
            .unwrap_or(0);
        Self { channels, precoder_offsets, decoder_offsets, scratch_len }
    }

    pub fn channels(&self) -> &ChannelSet {
        &self.channels
    }

    pub fn spec(&self) -> &ScenarioSpec {
        self.channels.spec()
    }

    pub fn dimension(&self) -> usize {
        self.spec().dimension()
    }

    /// Raw leakage of the beamformers encoded in `x`.
    pub fn leakage(&self, x: &[f64]) -> Result<f64> {
        let expected = self.dimension();
        if x.len() != expected {
            return Err(IaError::WrongLength { expected, got: x.len() });
        }
        Ok(self.leakage_unchecked(x))
    }

    /// Scale-invariant leakage of `x`; errors on a zero column.
    pub fn leakage_normalized(&self, x: &[f64]) -> Result<f64> {
        let b = BeamformerSet::decode(x, self.spec())?;
        leakage_normalized(&self.channels, &b)
    }

    fn leakage_unchecked(&self, x: &[f64]) -> f64 {
        let spec = self.channels.spec();
        let k = spec.users();
        let mut hv = vec![Complex64::new(0.0, 0.0); self.scratch_len];
        let at = |idx: usize| Complex64::new(x[idx], x[idx + 1]);
        let mut total = 0.0;
        for i in 0..k {
            let (n_i, d_i) = (spec.rx_antennas()[i], spec.streams()[i]);
            let u_off = self.decoder_offsets[i];
            for j in 0..k {
                if i == j {
                    continue;
                }
                let (m_j, d_j) = (spec.tx_antennas()[j], spec.streams()[j]);
                let v_off = self.precoder_offsets[j];
                let h = self.channels.link(i, j);
                // hv = H_ij V_j, column-major N_i x d_j
                for c in 0..d_j {
                    for r in 0..n_i {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for q in 0..m_j {
                            acc += h[(r, q)] * at(v_off + 2 * (q + c * m_j));
                        }
                        hv[r + c * n_i] = acc;
                    }
                }
                // (U_i^H)[m, p] lives at column-major position m + p d_i
                for c in 0..d_j {
                    for m in 0..d_i {
                        let mut acc = Complex64::new(0.0, 0.0);
                        for p in 0..n_i {
                            acc += at(u_off + 2 * (m + p * d_i)) * hv[p + c * n_i];
                        }
                        total += acc.norm_sqr();
                    }
                }
            }
        }
        total
    }
}
