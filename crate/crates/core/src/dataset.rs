use serde::Serialize;

use crate::dominance::IoPoint;
use crate::error::{DeaError, Result};

/// Observed units, each consuming `m` inputs to produce `s` outputs.
///
/// Values are stored unit-major: `inputs[j]` is the input vector of unit `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Dataset {
    names: Vec<String>,
    inputs: Vec<Vec<f64>>,
    outputs: Vec<Vec<f64>>,
    m: usize,
    s: usize,
    nonnegative: bool,
}

impl Dataset {
    pub fn new(names: Vec<String>, inputs: Vec<Vec<f64>>, outputs: Vec<Vec<f64>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(DeaError::EmptyDataset);
        }
        if inputs.len() != n || outputs.len() != n {
            return Err(DeaError::Dimension(format!(
                "{} names but {} input and {} output vectors",
                n,
                inputs.len(),
                outputs.len()
            )));
        }
        let m = inputs[0].len();
        let s = outputs[0].len();
        if m == 0 || s == 0 {
            return Err(DeaError::InvalidDataset(
                "at least one input and one output are required".into(),
            ));
        }
        for j in 0..n {
            if inputs[j].len() != m || outputs[j].len() != s {
                return Err(DeaError::Dimension(format!(
                    "unit {} has {} inputs and {} outputs, expected {} and {}",
                    names[j],
                    inputs[j].len(),
                    outputs[j].len(),
                    m,
                    s
                )));
            }
            if inputs[j].iter().chain(&outputs[j]).any(|v| !v.is_finite()) {
                return Err(DeaError::InvalidDataset(format!(
                    "unit {} has a non-finite value",
                    names[j]
                )));
            }
        }
        let nonnegative = inputs.iter().chain(&outputs).flatten().all(|&v| v >= 0.0);
        Ok(Self {
            names,
            inputs,
            outputs,
            m,
            s,
            nonnegative,
        })
    }

    /// Builds a dataset from unit vectors, naming units `1..=n`.
    pub fn from_units(inputs: Vec<Vec<f64>>, outputs: Vec<Vec<f64>>) -> Result<Self> {
        let names = (1..=inputs.len()).map(|j| j.to_string()).collect();
        Self::new(names, inputs, outputs)
    }

    /// Builds a dataset from an `m x n` input matrix and an `s x n` output
    /// matrix given as rows.
    pub fn from_matrices(names: Vec<String>, x: &[Vec<f64>], y: &[Vec<f64>]) -> Result<Self> {
        let n = names.len();
        if x.iter().chain(y).any(|row| row.len() != n) {
            return Err(DeaError::Dimension(format!(
                "every matrix row must have {} columns",
                n
            )));
        }
        let inputs = (0..n).map(|j| x.iter().map(|row| row[j]).collect()).collect();
        let outputs = (0..n).map(|j| y.iter().map(|row| row[j]).collect()).collect();
        Self::new(names, inputs, outputs)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn x(&self, j: usize) -> &[f64] {
        &self.inputs[j]
    }

    pub fn y(&self, j: usize) -> &[f64] {
        &self.outputs[j]
    }

    pub fn name(&self, j: usize) -> &str {
        &self.names[j]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// True iff every input and output value is `>= 0`.
    pub fn is_nonnegative(&self) -> bool {
        self.nonnegative
    }

    pub fn point(&self, j: usize) -> IoPoint {
        IoPoint::new(self.inputs[j].clone(), self.outputs[j].clone())
    }

    pub fn check_unit(&self, o: usize) -> Result<()> {
        if o < self.n() {
            Ok(())
        } else {
            Err(DeaError::UnitOutOfRange {
                index: o,
                units: self.n(),
            })
        }
    }

    /// The reference set with unit `o` removed.
    pub fn reduced(&self, o: usize) -> Result<ReducedDataset<'_>> {
        self.check_unit(o)?;
        Ok(ReducedDataset {
            base: self,
            excluded: o,
            index_map: (0..self.n()).filter(|&j| j != o).collect(),
        })
    }

    /// Adds `input_shift` to every input vector and `output_shift` to every
    /// output vector.
    pub fn translated(&self, input_shift: &[f64], output_shift: &[f64]) -> Result<Self> {
        if input_shift.len() != self.m || output_shift.len() != self.s {
            return Err(DeaError::Dimension("shift vector length mismatch".into()));
        }
        let shift = |v: &Vec<f64>, a: &[f64]| v.iter().zip(a).map(|(x, d)| x + d).collect();
        Self::new(
            self.names.clone(),
            self.inputs.iter().map(|x| shift(x, input_shift)).collect(),
            self.outputs.iter().map(|y| shift(y, output_shift)).collect(),
        )
    }

    /// Multiplies input row `i` (or output row `i` when `output` is set) by `factor`.
    pub fn scaled_row(&self, output: bool, i: usize, factor: f64) -> Result<Self> {
        let mut copy = self.clone();
        let rows = if output {
            &mut copy.outputs
        } else {
            &mut copy.inputs
        };
        if rows.first().is_none_or(|r| i >= r.len()) {
            return Err(DeaError::Dimension(format!("row {} out of range", i)));
        }
        for unit in rows.iter_mut() {
            unit[i] *= factor;
        }
        Self::new(copy.names, copy.inputs, copy.outputs)
    }
}

/// View of a dataset with one unit excluded, preserving the original order.
#[derive(Debug, Clone)]
pub struct ReducedDataset<'a> {
    base: &'a Dataset,
    excluded: usize,
    index_map: Vec<usize>,
}

impl<'a> ReducedDataset<'a> {
    pub fn base(&self) -> &'a Dataset {
        self.base
    }

    pub fn excluded(&self) -> usize {
        self.excluded
    }

    /// Number of reference units (`n - 1`).
    pub fn len(&self) -> usize {
        self.index_map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index_map.is_empty()
    }

    /// Maps a reduced column index back to the original unit index.
    pub fn original_index(&self, k: usize) -> usize {
        self.index_map[k]
    }

    pub fn index_map(&self) -> &[usize] {
        &self.index_map
    }

    pub fn x(&self, k: usize) -> &'a [f64] {
        self.base.x(self.index_map[k])
    }

    pub fn y(&self, k: usize) -> &'a [f64] {
        self.base.y(self.index_map[k])
    }

    /// Input vector of the excluded unit.
    pub fn x_excluded(&self) -> &'a [f64] {
        self.base.x(self.excluded)
    }

    pub fn y_excluded(&self) -> &'a [f64] {
        self.base.y(self.excluded)
    }
}
