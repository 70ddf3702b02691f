use serde::{Deserialize, Serialize};

use crate::CoreError;

/// A weight vector `a = (a_0, ..., a_n)` with total weight `l`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WeightsRepr", into = "WeightsRepr")]
pub struct Weights {
    a: Vec<i64>,
    l: i64,
}

#[derive(Serialize, Deserialize)]
struct WeightsRepr {
    a: Vec<i64>,
    #[serde(default)]
    l: Option<i64>,
}

impl TryFrom<WeightsRepr> for Weights {
    type Error = String;

    fn try_from(r: WeightsRepr) -> Result<Self, String> {
        let w = Weights::new(r.a).map_err(|e| e.to_string())?;
        match r.l {
            Some(l) if l != w.l => Err(format!("stored l = {l} disagrees with sum {}", w.l)),
            _ => Ok(w),
        }
    }
}

impl From<Weights> for WeightsRepr {
    fn from(w: Weights) -> Self {
        WeightsRepr { l: Some(w.l), a: w.a }
    }
}

impl Weights {
    pub fn new(a: Vec<i64>) -> Result<Self, CoreError> {
        if a.is_empty() {
            return Err(CoreError::EmptyWeights);
        }
        if a.len() > 62 {
            return Err(CoreError::TooManyWeights(a.len()));
        }
        if let Some((index, &value)) = a.iter().enumerate().find(|(_, &v)| v < 1) {
            return Err(CoreError::NonPositiveWeight { index, value });
        }
        let l = a.iter().sum();
        Ok(Weights { a, l })
    }

    /// Parses a comma separated list such as `2,3`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let a = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|e| format!("bad weight {t:?}: {e}")))
            .collect::<Result<Vec<_>, _>>()?;
        Weights::new(a).map_err(|e| e.to_string())
    }

    pub fn a(&self) -> &[i64] {
        &self.a
    }

    /// Total weight `l = sum a_i`.
    pub fn l(&self) -> i64 {
        self.l
    }

    /// `n`, so that there are `n + 1` weights.
    pub fn n(&self) -> usize {
        self.a.len() - 1
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    /// Number of objects `l - 1` in the exceptional range `[0, l - 2]`.
    pub fn object_count(&self) -> i64 {
        self.l - 1
    }

    pub fn is_sorted(&self) -> bool {
        self.a.windows(2).all(|p| p[0] <= p[1])
    }

    /// Sum of the weights indexed by `subset`.
    pub fn subset_weight(&self, subset: &[usize]) -> i64 {
        subset.iter().map(|&i| self.a[i]).sum()
    }
}

impl std::fmt::Display for Weights {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A monomial `x^e` together with its weighted degree. Equality and order
/// look at exponents only.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(into = "Vec<u32>", from = "Vec<u32>")]
pub struct Monomial {
    exponents: Vec<u32>,
    weighted_degree: Option<i64>,
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.exponents == other.exponents
    }
}

impl Eq for Monomial {}

impl std::hash::Hash for Monomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.exponents.hash(state)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.exponents.cmp(&other.exponents)
    }
}

impl From<Monomial> for Vec<u32> {
    fn from(m: Monomial) -> Self {
        m.exponents
    }
}

impl From<Vec<u32>> for Monomial {
    fn from(exponents: Vec<u32>) -> Self {
        Monomial { exponents, weighted_degree: None }
    }
}

impl Monomial {
    pub fn new(w: &Weights, exponents: Vec<u32>) -> Self {
        assert_eq!(exponents.len(), w.len(), "exponent vector length");
        let d = exponents.iter().zip(w.a()).map(|(&e, &a)| e as i64 * a).sum();
        Monomial { exponents, weighted_degree: Some(d) }
    }

    pub fn one(w: &Weights) -> Self {
        Monomial::new(w, vec![0; w.len()])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    /// Weighted degree `sum a_i e_i`. Monomials decoded from bare exponent
    /// arrays must be given weights through [`Monomial::degree_in`].
    pub fn weighted_degree(&self) -> i64 {
        self.weighted_degree.expect("monomial carries no weights; use degree_in")
    }

    pub fn degree_in(&self, w: &Weights) -> i64 {
        self.exponents.iter().zip(w.a()).map(|(&e, &a)| e as i64 * a).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.exponents.len(), other.exponents.len());
        let exponents = self.exponents.iter().zip(&other.exponents).map(|(a, b)| a + b).collect();
        let weighted_degree = match (self.weighted_degree, other.weighted_degree) {
            (Some(a), Some(b)) => Some(a + b),
            _ => None,
        };
        Monomial { exponents, weighted_degree }
    }

    pub fn is_one(&self) -> bool {
        self.exponents.iter().all(|&e| e == 0)
    }
}

impl std::fmt::Display for Monomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exponents.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Exponent vectors of weighted degree `k`, first coordinate largest first.
fn enumerate(a: &[i64], k: i64, prefix: &mut Vec<u32>, out: &mut dyn FnMut(&[u32])) {
    match a.split_first() {
        None => {
            if k == 0 {
                out(prefix);
            }
        }
        Some((&head, rest)) => {
            if rest.is_empty() {
                if k % head == 0 {
                    prefix.push((k / head) as u32);
                    out(prefix);
                    prefix.pop();
                }
                return;
            }
            let mut e = k / head;
            loop {
                prefix.push(e as u32);
                enumerate(rest, k - e * head, prefix, out);
                prefix.pop();
                if e == 0 {
                    break;
                }
                e -= 1;
            }
        }
    }
}

/// `dim R_k`: the number of exponent vectors with `sum a_i e_i = k`.
pub fn graded_dim(w: &Weights, k: i64) -> u64 {
    if k < 0 {
        return 0;
    }
    let mut count = 0u64;
    enumerate(w.a(), k, &mut Vec::with_capacity(w.len()), &mut |_| count += 1);
    count
}

/// Basis of `R_k` in lexicographic order (`x_0^3` before `x_1^2`).
pub fn monomial_basis(w: &Weights, k: i64) -> Vec<Monomial> {
    if k < 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    enumerate(w.a(), k, &mut Vec::with_capacity(w.len()), &mut |e| {
        out.push(Monomial::new(w, e.to_vec()))
    });
    out
}

/// `dim H^p(P(a), O(k))`.
pub fn sheaf_cohomology_dim(w: &Weights, p: i64, k: i64) -> Result<u64, CoreError> {
    let n = w.n();
    if p < 0 || p > n as i64 {
        return Err(CoreError::DegreeOutOfRange { p, n });
    }
    let mut dim = 0;
    if p == 0 && k >= 0 {
        dim += graded_dim(w, k);
    }
    if p == n as i64 && k <= -w.l() {
        dim += graded_dim(w, -k - w.l());
    }
    Ok(dim)
}
