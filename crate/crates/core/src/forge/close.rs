//! The closure step over `K[[t]] / t^N`: given a stage `A` in `K` and the
//! next stage `B'` in the series ring, build `A' ⊆ A + m` with `C_i(A', B')`.

use std::collections::{BTreeSet, HashMap};

use super::program::{Node, WitnessProgram};
use crate::conditions::{check_condition, root_table, tuple_index, FiniteStage, Rule};
use crate::error::ForgeError;
use crate::par::Exec;
use crate::ring::{Field, Ring};
use crate::series::{SeriesRing, TruncatedSeries};

/// Builds a witness program while keeping one node per distinct value.
pub struct SeriesBuilder<F: Field> {
    pub ring: SeriesRing<F>,
    pub program: WitnessProgram<F::Elem>,
    values: Vec<TruncatedSeries<F::Elem>>,
    lookup: HashMap<TruncatedSeries<F::Elem>, usize>,
    precision_lost: bool,
}

impl<F: Field> SeriesBuilder<F> {
    pub fn new(field: F, precision: usize) -> Self {
        SeriesBuilder {
            ring: SeriesRing::new(field, precision),
            program: WitnessProgram::new(),
            values: Vec::new(),
            lookup: HashMap::new(),
            precision_lost: false,
        }
    }

    pub fn field(&self) -> &F {
        &self.ring.field
    }

    pub fn value(&self, id: usize) -> &TruncatedSeries<F::Elem> {
        &self.values[id]
    }

    pub fn values(&self) -> &[TruncatedSeries<F::Elem>] {
        &self.values
    }

    /// Whether some product of nonzero series vanished modulo `t^N`, so that
    /// distinct elements may have been merged.
    pub fn precision_lost(&self) -> bool {
        self.precision_lost
    }

    fn push(&mut self, node: Node<F::Elem>, value: TruncatedSeries<F::Elem>) -> usize {
        if let Some(&id) = self.lookup.get(&value) {
            return id;
        }
        let id = self.program.push(node);
        self.lookup.insert(value.clone(), id);
        self.values.push(value);
        id
    }

    pub fn constant(&mut self, c: F::Elem) -> usize {
        let v = self.ring.constant(c.clone());
        self.push(Node::Const(c), v)
    }

    pub fn seed(&mut self) -> usize {
        let v = self.ring.t();
        self.push(Node::Seed, v)
    }

    pub fn add(&mut self, x: usize, y: usize) -> usize {
        let v = self.ring.add(&self.values[x], &self.values[y]);
        self.push(Node::Add(x, y), v)
    }

    pub fn sub(&mut self, x: usize, y: usize) -> usize {
        let v = self.ring.sub(&self.values[x], &self.values[y]);
        self.push(Node::Sub(x, y), v)
    }

    pub fn mul(&mut self, x: usize, y: usize) -> usize {
        let v = self.product(x, y);
        self.push(Node::Mul(x, y), v)
    }

    fn product(&self, x: usize, y: usize) -> TruncatedSeries<F::Elem> {
        self.ring.mul(&self.values[x], &self.values[y])
    }

    fn note_product(&mut self, x: usize, y: usize) {
        if let (Some(u), Some(w)) = (self.ring.valuation(&self.values[x]), self.ring.valuation(&self.values[y])) {
            if u + w >= self.ring.precision {
                self.precision_lost = true;
            }
        }
    }

    pub fn inv_one_plus(&mut self, x: usize) -> Result<usize, ForgeError> {
        let v = self.ring.inv_one_plus_checked(&self.values[x])?;
        Ok(self.push(Node::InvOnePlus(x), v))
    }

    pub fn hensel_root(&mut self, coeffs: Vec<usize>, degree: usize, residue_root: F::Elem, branch: usize, stage: usize) -> Result<usize, ForgeError> {
        let cs: Vec<_> = coeffs.iter().map(|&c| self.values[c].clone()).collect();
        let v = self.ring.hensel_lift_normed(degree, &cs, &residue_root)?;
        Ok(self.push(Node::HenselRoot { coeffs, degree, branch, residue_root, stage }, v))
    }

    pub fn stage_set(&self, ids: &[usize]) -> FiniteStage<TruncatedSeries<F::Elem>> {
        ids.iter().map(|&k| self.values[k].clone()).collect()
    }
}

/// Limits applied while closing.
#[derive(Clone, Copy, Debug)]
pub struct CloseLimits {
    pub max_stage_size: usize,
    pub exec: Exec,
}

impl Default for CloseLimits {
    fn default() -> Self {
        CloseLimits { max_stage_size: 250_000, exec: Exec::Parallel }
    }
}

/// Extends the `K`-stage `a` to a stage `A'` over the series ring satisfying
/// `C_i(A', B')`, where `bp` are the nodes of `B'`. Returns the nodes of `A'`.
///
/// `A'` is `A` together with `0`, `B'`, `B' - B'`, `B' B'`, `a_i B'`,
/// `(1 + B')^{-1} - 1`, and `r + 1` for every root `r` of every
/// `X^n + X^{n-1} + … + c_0` with coefficients in `B'` whose residue lies in
/// `-1 + A`.
pub fn close_core<F: Field>(
    b: &mut SeriesBuilder<F>,
    i: usize,
    rule: &Rule<F::Elem>,
    a: &FiniteStage<F::Elem>,
    bp: &[usize],
    limits: CloseLimits,
) -> Result<Vec<usize>, ForgeError> {
    let k = b.field().clone();
    let exec = limits.exec;
    let res_b: FiniteStage<F::Elem> = bp.iter().map(|&x| b.value(x).residue().clone()).collect();
    let pre = check_condition(&k, i, rule, a, &res_b, exec);
    if let Some(f) = pre.first_failure() {
        return Err(ForgeError::Precondition(format!("C_{i}(A, res B') fails clause {}", f.clause)));
    }
    let m = bp.len();
    let n = rule.n;
    let too_large = |size: usize| size > limits.max_stage_size;
    let tuples = m.checked_pow(n as u32 - 1).unwrap_or(usize::MAX);
    if too_large(m.saturating_mul(m)) || too_large(tuples) {
        return Err(ForgeError::StageTooLarge { stage: i, size: m.saturating_mul(m).max(tuples), limit: limits.max_stage_size });
    }

    let mut out = BTreeSet::new();
    for x in a {
        out.insert(b.constant(x.clone()));
    }
    let zero = b.constant(k.zero());
    out.insert(zero);
    out.extend(bp.iter().copied());

    // differences and products dominate; evaluate them in bulk
    let pairs: Vec<(usize, usize)> = (0..m).flat_map(|x| (0..m).map(move |y| (x, y))).collect();
    let diffs = exec.map(&pairs, |&(x, y)| b.ring.sub(b.value(bp[x]), b.value(bp[y])));
    for (&(x, y), v) in pairs.iter().zip(diffs) {
        out.insert(b.push(Node::Sub(bp[x], bp[y]), v));
    }
    let upper: Vec<(usize, usize)> = pairs.into_iter().filter(|(x, y)| x <= y).collect();
    let prods = exec.map(&upper, |&(x, y)| b.product(bp[x], bp[y]));
    for (&(x, y), v) in upper.iter().zip(prods) {
        b.note_product(bp[x], bp[y]);
        out.insert(b.push(Node::Mul(bp[x], bp[y]), v));
    }
    let ai = b.constant(rule.a.clone());
    for &y in bp {
        b.note_product(ai, y);
        out.insert(b.mul(ai, y));
    }
    for &y in bp {
        out.insert(b.inv_one_plus(y)?);
    }
    if out.len() > limits.max_stage_size {
        return Err(ForgeError::StageTooLarge { stage: i, size: out.len(), limit: limits.max_stage_size });
    }

    let table = root_table(&k, n, a, &res_b, exec);
    let one = b.constant(k.one());
    let mut digits = vec![0usize; n - 1];
    for t in 0..tuples {
        if t > 0 {
            for d in digits.iter_mut() {
                *d += 1;
                if *d < m {
                    break;
                }
                *d = 0;
            }
        }
        let coeffs: Vec<usize> = digits.iter().map(|&d| bp[d]).collect();
        let positions: Vec<usize> = coeffs.iter().map(|&c| res_b.position(b.value(c).residue()).expect("residue in res B'")).collect();
        let roots = &table[tuple_index(&positions, res_b.len())];
        for (branch, &ax) in roots.iter().enumerate() {
            let rho = k.sub(&a.as_slice()[ax], &k.one());
            let r = b.hensel_root(coeffs.clone(), n, rho, branch, i)?;
            out.insert(b.add(r, one));
        }
        if roots.is_empty() {
            unreachable!("clause 7 of the precondition guarantees a residue root");
        }
    }
    if out.len() > limits.max_stage_size {
        return Err(ForgeError::StageTooLarge { stage: i, size: out.len(), limit: limits.max_stage_size });
    }
    Ok(out.into_iter().collect())
}
