//! Structural patterns, cost tables, instances and selections.
//!
//! Indices are 0-based in memory. The JSON representation (see [`InstanceFile`]
//! and [`SelectionFile`]) is 1-based.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};

use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// A non-negative cost extended with `+inf`.
///
/// Addition saturates at infinity. Costs are totally ordered, with every
/// finite value below infinity. Integer-valued costs sum exactly.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Cost(f64);

impl Cost {
    pub const ZERO: Cost = Cost(0.0);
    pub const INFINITY: Cost = Cost(f64::INFINITY);

    /// Rejects negative values and NaN.
    pub fn new(value: f64) -> Option<Cost> {
        if value.is_nan() || value < 0.0 {
            None
        } else {
            Some(Cost(value))
        }
    }

    /// Panics on negative or NaN input. Intended for literals.
    pub fn finite(value: f64) -> Cost {
        assert!(value.is_finite() && value >= 0.0, "invalid finite cost {value}");
        Cost(value)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn is_infinite(self) -> bool {
        !self.0.is_finite()
    }
}

impl Eq for Cost {}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0 + rhs.0)
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        self.0 += rhs.0;
    }
}

impl Mul<f64> for Cost {
    type Output = Cost;
    /// Positive scaling; infinity stays infinite.
    fn mul(self, rhs: f64) -> Cost {
        debug_assert!(rhs > 0.0);
        Cost(self.0 * rhs)
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl From<u32> for Cost {
    fn from(v: u32) -> Cost {
        Cost(v as f64)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            f.write_str("inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Serialized as a JSON number, or the string `"inf"`.
impl Serialize for Cost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.is_infinite() {
            s.serialize_str("inf")
        } else if self.0.fract() == 0.0 && self.0 < 9.0e15 {
            s.serialize_u64(self.0 as u64)
        } else {
            s.serialize_f64(self.0)
        }
    }
}

/// Accepts a number, `null` or `"inf"` (both meaning infinity).
/// Negative numbers are passed through so that validation can report them.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RawCost(pub f64);

impl<'de> Deserialize<'de> for RawCost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<RawCost, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
            Null(()),
        }
        match Option::<Repr>::deserialize(d)? {
            None | Some(Repr::Null(())) => Ok(RawCost(f64::INFINITY)),
            Some(Repr::Num(v)) => Ok(RawCost(v)),
            Some(Repr::Text(s)) => match s.trim().to_ascii_lowercase().as_str() {
                "inf" | "infinity" | "+inf" => Ok(RawCost(f64::INFINITY)),
                other => Err(de::Error::custom(format!("invalid cost string {other:?}"))),
            },
        }
    }
}

impl Serialize for RawCost {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        if self.0.is_infinite() && self.0 > 0.0 {
            s.serialize_none()
        } else {
            Cost(self.0).serialize(s)
        }
    }
}

/// Binary matrix stored as its set of nonzero positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparsityPattern {
    rows: usize,
    cols: usize,
    entries: BTreeSet<(usize, usize)>,
}

impl SparsityPattern {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparsityPattern {
            rows,
            cols,
            entries: BTreeSet::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut s = Self::zeros(n, n);
        s.entries.extend((0..n).map(|i| (i, i)));
        s
    }

    pub fn full(rows: usize, cols: usize) -> Self {
        let mut s = Self::zeros(rows, cols);
        for i in 0..rows {
            s.entries.extend((0..cols).map(|j| (i, j)));
        }
        s
    }

    /// Builds a pattern from 0-based positions. Duplicates collapse.
    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut s = Self::zeros(rows, cols);
        for (i, j) in entries {
            s.insert(i, j)?;
        }
        Ok(s)
    }

    /// Builds a pattern from 1-based positions, as they appear in files.
    pub fn from_one_based(rows: usize, cols: usize, entries: &[[usize; 2]]) -> Result<Self> {
        let mut s = Self::zeros(rows, cols);
        for &[i, j] in entries {
            if i == 0 || j == 0 || i > rows || j > cols {
                return Err(Error::IndexOutOfRange(format!(
                    "entry ({i},{j}) outside a {rows}x{cols} pattern (indices are 1-based)"
                )));
            }
            s.entries.insert((i - 1, j - 1));
        }
        Ok(s)
    }

    /// Dense 0/1 rows; any nonzero byte marks a nonzero.
    pub fn from_dense<R: AsRef<[u8]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut s = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            assert_eq!(row.len(), cols, "ragged dense pattern");
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    s.entries.insert((i, j));
                }
            }
        }
        s
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<()> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "entry ({i},{j}) outside a {}x{} pattern (0-based)",
                self.rows, self.cols
            )));
        }
        self.entries.insert((i, j));
        Ok(())
    }

    pub fn remove(&mut self, i: usize, j: usize) -> bool {
        self.entries.remove(&(i, j))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.entries.contains(&(i, j))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Nonzero positions in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.entries.iter().copied()
    }

    pub fn transpose(&self) -> Self {
        SparsityPattern {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|&(i, j)| (j, i)).collect(),
        }
    }

    pub fn row_is_nonzero(&self, i: usize) -> bool {
        self.entries.range((i, 0)..(i + 1, 0)).next().is_some()
    }

    pub fn col_is_nonzero(&self, j: usize) -> bool {
        self.entries.iter().any(|&(_, c)| c == j)
    }

    /// Same shape, with every column outside `keep` zeroed.
    pub fn keep_columns(&self, keep: &BTreeSet<usize>) -> Self {
        SparsityPattern {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|(_, j)| keep.contains(j))
                .collect(),
        }
    }

    /// Same shape, with every row outside `keep` zeroed.
    pub fn keep_rows(&self, keep: &BTreeSet<usize>) -> Self {
        SparsityPattern {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|(i, _)| keep.contains(i))
                .collect(),
        }
    }

    /// 1-based entry list for serialization.
    pub fn to_one_based(&self) -> Vec<[usize; 2]> {
        self.entries.iter().map(|&(i, j)| [i + 1, j + 1]).collect()
    }
}

/// A validated co-design problem instance.
///
/// `a` is n x n, `b` is n x p, `c` is m x n, `cost_f` is p x m.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    a: SparsityPattern,
    b: SparsityPattern,
    c: SparsityPattern,
    cost_u: Vec<Cost>,
    cost_y: Vec<Cost>,
    cost_f: Vec<Vec<Cost>>,
}

impl Instance {
    /// Checks every dimension and cost invariant, reporting the first violation.
    pub fn new(
        a: SparsityPattern,
        b: SparsityPattern,
        c: SparsityPattern,
        cost_u: Vec<f64>,
        cost_y: Vec<f64>,
        cost_f: Vec<Vec<f64>>,
    ) -> Result<Self> {
        let n = a.rows();
        if n == 0 {
            return Err(Error::DimensionMismatch("the state dimension n must be at least 1".into()));
        }
        if !a.is_square() {
            return Err(Error::DimensionMismatch(format!("A is {}x{}, expected square", a.rows(), a.cols())));
        }
        if b.rows() != n {
            return Err(Error::DimensionMismatch(format!("B has {} rows, expected n = {n}", b.rows())));
        }
        if c.cols() != n {
            return Err(Error::DimensionMismatch(format!("C has {} columns, expected n = {n}", c.cols())));
        }
        let (p, m) = (b.cols(), c.rows());
        if cost_u.len() != p {
            return Err(Error::DimensionMismatch(format!(
                "cost_u has {} entries but B has {p} columns",
                cost_u.len()
            )));
        }
        if cost_y.len() != m {
            return Err(Error::DimensionMismatch(format!(
                "cost_y has {} entries but C has {m} rows",
                cost_y.len()
            )));
        }
        if cost_f.len() != p || cost_f.iter().any(|row| row.len() != m) {
            return Err(Error::DimensionMismatch(format!("cost_f must be {p}x{m}")));
        }

        let io_costs = |table: &'static str, values: Vec<f64>| -> Result<Vec<Cost>> {
            values
                .into_iter()
                .enumerate()
                .map(|(k, v)| {
                    let cost = Cost::new(v).ok_or(Error::NegativeCost {
                        table,
                        index: (k + 1).to_string(),
                        value: v,
                    })?;
                    if cost.is_infinite() {
                        return Err(Error::InfiniteIoCost { table, index: k + 1 });
                    }
                    Ok(cost)
                })
                .collect()
        };
        let cost_u = io_costs("cost_u", cost_u)?;
        let cost_y = io_costs("cost_y", cost_y)?;
        let cost_f = cost_f
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(j, v)| {
                        Cost::new(v).ok_or(Error::NegativeCost {
                            table: "cost_f",
                            index: format!("({},{})", i + 1, j + 1),
                            value: v,
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;

        Ok(Instance {
            a,
            b,
            c,
            cost_u,
            cost_y,
            cost_f,
        })
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn p(&self) -> usize {
        self.b.cols()
    }

    pub fn m(&self) -> usize {
        self.c.rows()
    }

    pub fn a(&self) -> &SparsityPattern {
        &self.a
    }

    pub fn b(&self) -> &SparsityPattern {
        &self.b
    }

    pub fn c(&self) -> &SparsityPattern {
        &self.c
    }

    pub fn cost_u(&self) -> &[Cost] {
        &self.cost_u
    }

    pub fn cost_y(&self) -> &[Cost] {
        &self.cost_y
    }

    pub fn cost_f(&self) -> &[Vec<Cost>] {
        &self.cost_f
    }

    /// Communication cost of feeding output `j` to input `i` (0-based).
    pub fn feedback_cost(&self, i: usize, j: usize) -> Cost {
        self.cost_f[i][j]
    }

    /// Input/output pairs whose communication cost is finite, in row-major order.
    pub fn finite_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.p())
            .flat_map(|i| (0..self.m()).map(move |j| (i, j)))
            .filter(|&(i, j)| self.cost_f[i][j].is_finite())
            .collect()
    }

    /// Information pattern (p x m) allowing every finite-cost pair.
    pub fn candidate_information_pattern(&self) -> SparsityPattern {
        SparsityPattern::from_entries(self.p(), self.m(), self.finite_pairs())
            .expect("finite pairs lie inside the cost table")
    }

    /// Copy of this instance with every cost multiplied by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Instance {
        assert!(factor > 0.0 && factor.is_finite());
        Instance {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.c.clone(),
            cost_u: self.cost_u.iter().map(|&c| c * factor).collect(),
            cost_y: self.cost_y.iter().map(|&c| c * factor).collect(),
            cost_f: self
                .cost_f
                .iter()
                .map(|row| row.iter().map(|&c| c * factor).collect())
                .collect(),
        }
    }

    pub fn with_dynamics(&self, a: SparsityPattern) -> Result<Instance> {
        let mut raw = self.to_file();
        raw.a = a.to_one_based();
        raw.n = a.rows();
        raw.validate()
    }

    pub fn to_file(&self) -> InstanceFile {
        InstanceFile {
            n: self.n(),
            p: self.p(),
            m: self.m(),
            a: self.a.to_one_based(),
            b: self.b.to_one_based(),
            c: self.c.to_one_based(),
            cost_u: self.cost_u.iter().map(|c| RawCost(c.value())).collect(),
            cost_y: self.cost_y.iter().map(|c| RawCost(c.value())).collect(),
            cost_f: self
                .cost_f
                .iter()
                .map(|row| row.iter().map(|c| RawCost(c.value())).collect())
                .collect(),
        }
    }
}

/// Chosen inputs, outputs and feedback links, `(I, J, F)`.
///
/// A feedback pair `(i, j)` feeds output `j` to input `i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Selection {
    pub inputs: BTreeSet<usize>,
    pub outputs: BTreeSet<usize>,
    pub feedback: BTreeSet<(usize, usize)>,
}

impl Selection {
    /// Enforces `F ⊆ I × J`.
    pub fn new(
        inputs: BTreeSet<usize>,
        outputs: BTreeSet<usize>,
        feedback: BTreeSet<(usize, usize)>,
    ) -> Result<Self> {
        for &(i, j) in &feedback {
            if !inputs.contains(&i) || !outputs.contains(&j) {
                return Err(Error::InvalidSelection(format!(
                    "feedback pair ({},{}) uses an unselected input or output",
                    i + 1,
                    j + 1
                )));
            }
        }
        Ok(Selection {
            inputs,
            outputs,
            feedback,
        })
    }

    /// The selection whose inputs and outputs are exactly those touched by `feedback`.
    pub fn induced_by<I: IntoIterator<Item = (usize, usize)>>(feedback: I) -> Self {
        let feedback: BTreeSet<_> = feedback.into_iter().collect();
        Selection {
            inputs: feedback.iter().map(|&(i, _)| i).collect(),
            outputs: feedback.iter().map(|&(_, j)| j).collect(),
            feedback,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.inputs.is_empty() && self.outputs.is_empty() && self.feedback.is_empty()
    }

    /// Checks `F ⊆ I × J` and that every index is within the instance.
    pub fn check_against(&self, inst: &Instance) -> Result<()> {
        if let Some(&i) = self.inputs.iter().find(|&&i| i >= inst.p()) {
            return Err(Error::IndexOutOfRange(format!("input {} (p = {})", i + 1, inst.p())));
        }
        if let Some(&j) = self.outputs.iter().find(|&&j| j >= inst.m()) {
            return Err(Error::IndexOutOfRange(format!("output {} (m = {})", j + 1, inst.m())));
        }
        Selection::new(self.inputs.clone(), self.outputs.clone(), self.feedback.clone()).map(|_| ())
    }

    /// Information pattern `K(F)`, p x m.
    pub fn information_pattern(&self, inst: &Instance) -> SparsityPattern {
        SparsityPattern::from_entries(inst.p(), inst.m(), self.feedback.iter().copied())
            .expect("selection checked against instance")
    }
}

/// Total cost `sum c_u(I) + sum c_y(J) + sum c_f(F)`, saturating at infinity.
pub fn selection_cost(inst: &Instance, sel: &Selection) -> Cost {
    let inputs: Cost = sel.inputs.iter().map(|&i| inst.cost_u[i]).sum();
    let outputs: Cost = sel.outputs.iter().map(|&j| inst.cost_y[j]).sum();
    let feedback: Cost = sel.feedback.iter().map(|&(i, j)| inst.cost_f[i][j]).sum();
    inputs + outputs + feedback
}

/// On-disk instance format. Missing blocks default to empty, so a file holding
/// only `n` and `A` is a valid instance with `p = m = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub n: usize,
    #[serde(default)]
    pub p: usize,
    #[serde(default)]
    pub m: usize,
    #[serde(rename = "A")]
    pub a: Vec<[usize; 2]>,
    #[serde(rename = "B", default)]
    pub b: Vec<[usize; 2]>,
    #[serde(rename = "C", default)]
    pub c: Vec<[usize; 2]>,
    #[serde(default)]
    pub cost_u: Vec<RawCost>,
    #[serde(default)]
    pub cost_y: Vec<RawCost>,
    #[serde(default)]
    pub cost_f: Vec<Vec<RawCost>>,
}

impl InstanceFile {
    pub fn validate(&self) -> Result<Instance> {
        let a = SparsityPattern::from_one_based(self.n, self.n, &self.a)?;
        let b = SparsityPattern::from_one_based(self.n, self.p, &self.b)?;
        let c = SparsityPattern::from_one_based(self.m, self.n, &self.c)?;
        Instance::new(
            a,
            b,
            c,
            self.cost_u.iter().map(|c| c.0).collect(),
            self.cost_y.iter().map(|c| c.0).collect(),
            self.cost_f
                .iter()
                .map(|row| row.iter().map(|c| c.0).collect())
                .collect(),
        )
    }
}

/// Parses and validates an instance from JSON text.
pub fn parse_instance(json: &str) -> std::result::Result<Instance, ParseError> {
    let file: InstanceFile = serde_json::from_str(json)?;
    Ok(file.validate()?)
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Invalid(#[from] Error),
}

/// On-disk selection format (1-based). `cost` is informational on input.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SelectionFile {
    pub inputs: Vec<usize>,
    pub outputs: Vec<usize>,
    pub feedback: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cost: Option<Cost>,
}

impl<'de> Deserialize<'de> for Cost {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Cost, D::Error> {
        let raw = RawCost::deserialize(d)?;
        Cost::new(raw.0).ok_or_else(|| de::Error::custom(format!("negative cost {}", raw.0)))
    }
}

impl SelectionFile {
    pub fn from_selection(sel: &Selection, cost: Option<Cost>) -> Self {
        SelectionFile {
            inputs: sel.inputs.iter().map(|i| i + 1).collect(),
            outputs: sel.outputs.iter().map(|j| j + 1).collect(),
            feedback: sel.feedback.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
            cost,
        }
    }

    pub fn to_selection(&self) -> Result<Selection> {
        let one_based = |k: usize, what: &str| {
            k.checked_sub(1)
                .ok_or_else(|| Error::IndexOutOfRange(format!("{what} index 0 (indices are 1-based)")))
        };
        let inputs = self
            .inputs
            .iter()
            .map(|&i| one_based(i, "input"))
            .collect::<Result<_>>()?;
        let outputs = self
            .outputs
            .iter()
            .map(|&j| one_based(j, "output"))
            .collect::<Result<_>>()?;
        let feedback = self
            .feedback
            .iter()
            .map(|&[i, j]| Ok((one_based(i, "input")?, one_based(j, "output")?)))
            .collect::<Result<_>>()?;
        Selection::new(inputs, outputs, feedback)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set<T: Ord + Copy>(items: &[T]) -> BTreeSet<T> {
        items.iter().copied().collect()
    }

    #[test]
    fn cost_arithmetic_saturates() {
        let five = Cost::finite(5.0);
        assert_eq!(five + Cost::INFINITY, Cost::INFINITY);
        assert_eq!(five + Cost::finite(2.0), Cost::finite(7.0));
        assert!(Cost::finite(1e300) < Cost::INFINITY);
        assert_eq!(Cost::new(-1.0), None);
        assert_eq!(Cost::new(f64::NAN), None);
        assert_eq!(Cost::INFINITY.to_string(), "inf");
    }

    #[test]
    fn cost_json_accepts_null_and_inf_alias() {
        let costs: Vec<RawCost> = serde_json::from_str(r#"[1, null, "inf", 2.5]"#).unwrap();
        assert_eq!(costs[0].0, 1.0);
        assert!(costs[1].0.is_infinite());
        assert!(costs[2].0.is_infinite());
        assert_eq!(costs[3].0, 2.5);
        assert!(serde_json::from_str::<Vec<RawCost>>(r#"["seven"]"#).is_err());
        assert_eq!(serde_json::to_string(&Cost::INFINITY).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Cost::finite(30.0)).unwrap(), "30");
    }

    #[test]
    fn example1_instance_is_valid() {
        let inst = fixtures::example1();
        assert_eq!((inst.n(), inst.p(), inst.m()), (6, 4, 3));
        let raw = inst.to_file();
        assert_eq!(raw.validate().unwrap(), inst);
    }

    #[test]
    fn negative_cost_rejected() {
        let err = Instance::new(
            SparsityPattern::identity(1),
            SparsityPattern::from_dense(&[[1u8]]),
            SparsityPattern::zeros(0, 1),
            vec![-1.0],
            vec![],
            vec![vec![]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NegativeCost { table: "cost_u", .. }), "{err}");
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let err = Instance::new(
            SparsityPattern::identity(5),
            SparsityPattern::zeros(5, 3),
            SparsityPattern::zeros(0, 5),
            vec![1.0; 4],
            vec![],
            vec![vec![]; 3],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DimensionMismatch(_)), "{err}");
    }

    #[test]
    fn infinite_io_cost_rejected() {
        let err = Instance::new(
            SparsityPattern::identity(1),
            SparsityPattern::zeros(1, 1),
            SparsityPattern::zeros(0, 1),
            vec![f64::INFINITY],
            vec![],
            vec![vec![]],
        )
        .unwrap_err();
        assert!(matches!(err, Error::InfiniteIoCost { .. }), "{err}");
    }

    #[test]
    fn out_of_range_index_rejected() {
        let file = InstanceFile {
            n: 2,
            p: 0,
            m: 0,
            a: vec![[1, 3]],
            b: vec![],
            c: vec![],
            cost_u: vec![],
            cost_y: vec![],
            cost_f: vec![],
        };
        assert!(matches!(file.validate(), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn worked_example_costs() {
        let ex1 = fixtures::example1();
        let sel = Selection::induced_by([(0, 0)]);
        assert_eq!(selection_cost(&ex1, &sel), Cost::finite(30.0));
        assert_eq!(selection_cost(&ex1, &Selection::default()), Cost::ZERO);

        let ex2 = fixtures::example2();
        let sel = Selection::induced_by([(1, 0), (2, 2), (0, 1)]);
        assert_eq!(sel.inputs, set(&[0, 1, 2]));
        assert_eq!(sel.outputs, set(&[0, 1, 2]));
        assert_eq!(selection_cost(&ex2, &sel), Cost::finite(186.0));
    }

    #[test]
    fn infinite_feedback_pair_gives_infinite_cost() {
        let ex1 = fixtures::example1();
        // c_f((1,2)) = inf
        let sel = Selection::induced_by([(0, 1)]);
        assert_eq!(selection_cost(&ex1, &sel), Cost::INFINITY);
    }

    #[test]
    fn selection_requires_feedback_within_io() {
        let err = Selection::new(set(&[0]), set(&[]), set(&[(0, 0)])).unwrap_err();
        assert!(matches!(err, Error::InvalidSelection(_)));
    }

    #[test]
    fn selection_file_round_trip() {
        let sel = Selection::induced_by([(1, 0), (2, 2)]);
        let file = SelectionFile::from_selection(&sel, Some(Cost::finite(3.0)));
        let text = serde_json::to_string(&file).unwrap();
        assert_eq!(text, r#"{"inputs":[2,3],"outputs":[1,3],"feedback":[[2,1],[3,3]],"cost":3}"#);
        let back: SelectionFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_selection().unwrap(), sel);
    }

    #[test]
    fn pattern_helpers() {
        let a = SparsityPattern::from_dense(&[[0u8, 1], [0, 0]]);
        assert_eq!(a.transpose(), SparsityPattern::from_dense(&[[0u8, 0], [1, 0]]));
        assert!(a.row_is_nonzero(0) && !a.row_is_nonzero(1));
        assert!(a.col_is_nonzero(1) && !a.col_is_nonzero(0));
        assert_eq!(a.to_one_based(), vec![[1, 2]]);
    }
}
