//! Channel matrices `H_ij` from transmitter `j` to receiver `i`.

use std::io::{BufRead, Write};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{IaError, Result};
use crate::scenario::ScenarioSpec;

pub type CMatrix = DMatrix<Complex64>;

/// Draws one circularly-symmetric `CN(0, 1)` sample (each part has variance 1/2).
pub fn complex_gaussian<R: rand::Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let normal = Normal::new(0.0, std::f64::consts::FRAC_1_SQRT_2).expect("valid std-dev");
    let re = normal.sample(rng);
    let im = normal.sample(rng);
    Complex64::new(re, im)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChannelSet {
    spec: ScenarioSpec,
    // row-major over (receiver, transmitter)
    links: Vec<CMatrix>,
}

impl ChannelSet {
    /// Wraps an explicit K×K grid given in `(i, j)` lexicographic order.
    pub fn from_links(spec: &ScenarioSpec, links: Vec<CMatrix>) -> Result<Self> {
        let k = spec.users();
        if links.len() != k * k {
            return Err(IaError::ShapeMismatch(format!("expected {} channel matrices, got {}", k * k, links.len())));
        }
        for i in 0..k {
            for j in 0..k {
                let h = &links[i * k + j];
                let want = (spec.rx_antennas()[i], spec.tx_antennas()[j]);
                if h.shape() != want {
                    return Err(IaError::ShapeMismatch(format!(
                        "H[{i}][{j}] is {:?}, expected {want:?}",
                        h.shape()
                    )));
                }
            }
        }
        Ok(Self { spec: spec.clone(), links })
    }

    /// I.i.d. Rayleigh channels; a pure function of `(spec, seed)`.
    ///
    /// Matrices are drawn in `(i, j)` lexicographic order, entries row-major,
    /// real part before imaginary part.
    pub fn generate(spec: &ScenarioSpec, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let k = spec.users();
        let mut links = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let (rows, cols) = (spec.rx_antennas()[i], spec.tx_antennas()[j]);
                let mut h = CMatrix::zeros(rows, cols);
                for r in 0..rows {
                    for c in 0..cols {
                        h[(r, c)] = complex_gaussian(&mut rng);
                    }
                }
                links.push(h);
            }
        }
        Self { spec: spec.clone(), links }
    }

    pub fn spec(&self) -> &ScenarioSpec {
        &self.spec
    }

    /// Channel from transmitter `tx` to receiver `rx`.
    pub fn link(&self, rx: usize, tx: usize) -> &CMatrix {
        &self.links[rx * self.spec.users() + tx]
    }

    pub fn links(&self) -> &[CMatrix] {
        &self.links
    }

    /// Text dump: a `K M N d` header line, then one line per matrix in
    /// `(i, j)` order holding its row-major `re im` pairs.
    ///
    /// Only symmetric scenarios can be described by the header.
    pub fn write_dump<W: Write>(&self, mut out: W) -> Result<()> {
        let (m, n, d) = self.spec.as_symmetric().ok_or_else(|| {
            IaError::InvalidScenario("channel dump requires a symmetric scenario".into())
        })?;
        writeln!(out, "{} {m} {n} {d}", self.spec.users())?;
        for h in &self.links {
            let mut first = true;
            for r in 0..h.nrows() {
                for c in 0..h.ncols() {
                    let z = h[(r, c)];
                    if !first {
                        out.write_all(b" ")?;
                    }
                    write!(out, "{} {}", z.re, z.im)?;
                    first = false;
                }
            }
            out.write_all(b"\n")?;
        }
        Ok(())
    }

    pub fn read_dump<R: BufRead>(input: R) -> Result<Self> {
        let mut lines = input.lines();
        let header = lines
            .next()
            .ok_or_else(|| IaError::Parse("empty channel dump".into()))??;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| IaError::Parse(format!("bad header token {t:?}"))))
            .collect::<Result<_>>()?;
        let [k, m, n, d] = dims[..] else {
            return Err(IaError::Parse(format!("header must be `K M N d`, got {header:?}")));
        };
        let spec = ScenarioSpec::symmetric(k, m, n, d)?;
        let mut links = Vec::with_capacity(k * k);
        for idx in 0..k * k {
            let line = lines
                .next()
                .ok_or_else(|| IaError::Parse(format!("missing matrix {idx}")))??;
            let values: Vec<f64> = line
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| IaError::Parse(format!("bad number {t:?}"))))
                .collect::<Result<_>>()?;
            if values.len() != 2 * n * m {
                return Err(IaError::Parse(format!(
                    "matrix {idx} has {} reals, expected {}",
                    values.len(),
                    2 * n * m
                )));
            }
            let entries = values.chunks_exact(2).map(|p| Complex64::new(p[0], p[1]));
            links.push(CMatrix::from_row_iterator(n, m, entries));
        }
        Self::from_links(&spec, links)
    }
}
