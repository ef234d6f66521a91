//! Newton polygons, residue polynomials and the truncated Newton iteration over
//! Mal'cev-Neumann series.
//!
//! Polygon abscissas follow the root-valuation convention: point `j` carries the
//! coefficient of `T^(n−j)`, so slopes are valuations of roots.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{binomial, rat_int, Rational};
use crate::error::{Error, Result};
use crate::ff::{make_field, poly_roots, splitting_degree, FFElem, FFPoly, Field};
use crate::series::MNSeries;

/// Polynomial `Σ coeffs[i] T^i` over truncated series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MNPoly {
    coeffs: Vec<MNSeries>,
}

impl MNPoly {
    /// Coefficients constant first; all are embedded into one common field.
    pub fn new(coeffs: Vec<MNSeries>) -> Result<MNPoly> {
        let Some(first) = coeffs.first() else {
            return Err(Error::ZeroPolynomial);
        };
        let p = first.p();
        let mut k = 1u64;
        for c in &coeffs {
            if c.p() != p {
                return Err(Error::PrimeMismatch(p, c.p()));
            }
            k = crate::arith::lcm(k, c.field().degree() as u64);
        }
        let field = make_field(p, k as usize)?;
        let coeffs: Vec<MNSeries> = coeffs.iter().map(|c| c.embed_into(&field)).collect::<Result<_>>()?;
        if coeffs.last().unwrap().is_empty() {
            return Err(Error::DegenerateInput(
                "leading coefficient has no terms at its precision".into(),
            ));
        }
        Ok(MNPoly { coeffs })
    }

    /// Integer coefficients (constant first) expanded at a common precision.
    pub fn from_integers(coeffs: &[i64], p: u64, prec: Rational) -> Result<MNPoly> {
        let field = make_field(p, 1)?;
        let coeffs = coeffs
            .iter()
            .map(|&c| MNSeries::from_integer(c, &field, prec.clone()))
            .collect::<Result<_>>()?;
        MNPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[MNSeries] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field(&self) -> &Field {
        self.coeffs[0].field()
    }

    pub fn p(&self) -> u64 {
        self.field().p()
    }

    pub fn embed_into(&self, field: &Field) -> Result<MNPoly> {
        Ok(MNPoly {
            coeffs: self.coeffs.iter().map(|c| c.embed_into(field)).collect::<Result<_>>()?,
        })
    }

    /// Horner evaluation at a series.
    pub fn eval(&self, x: &MNSeries) -> Result<MNSeries> {
        let mut acc = self.coeffs.last().unwrap().clone();
        for c in self.coeffs.iter().rev().skip(1) {
            acc = acc.mul(x)?.add(c)?;
        }
        Ok(acc)
    }

    /// `Φ(T + [c] p^s)`, with exact binomial coefficients.
    pub fn taylor_shift(&self, c: &FFElem, s: &Rational) -> Result<MNPoly> {
        let n = self.degree();
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            let mut acc = self.coeffs[n].mul_monomial(&c.pow((n - i) as u128), &(s * rat_int((n - i) as i64)))?;
            acc = acc.mul_integer(&binomial(n as u64, i as u64))?;
            for j in (i..n).rev() {
                let e = (j - i) as i64;
                let term = self.coeffs[j]
                    .mul_monomial(&c.pow(e as u128), &(s * rat_int(e)))?
                    .mul_integer(&binomial(j as u64, i as u64))?;
                acc = acc.add(&term)?;
            }
            out.push(acc);
        }
        Ok(MNPoly { coeffs: out })
    }

    /// Coefficient at polygon abscissa `j` (that of `T^(n−j)`).
    fn point(&self, j: usize) -> &MNSeries {
        &self.coeffs[self.degree() - j]
    }
}

/// One edge of the lower convex hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub left: (usize, Rational),
    pub right: (usize, Rational),
    pub slope: Rational,
}

impl Segment {
    pub fn length(&self) -> usize {
        self.right.0 - self.left.0
    }
}

/// Roots not separated by the known digits: `multiplicity` roots, each of valuation at
/// least `bound`, arising when the constant term vanishes at its precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailingCluster {
    pub start: usize,
    pub multiplicity: usize,
    pub bound: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    pub segments: Vec<Segment>,
    pub trailing: Option<TrailingCluster>,
}

impl NewtonPolygon {
    /// Largest slope among the certain segments.
    pub fn s_max(&self) -> Option<&Rational> {
        self.segments.last().map(|s| &s.slope)
    }

    /// Left abscissa of the segment with the largest slope.
    pub fn m_max(&self) -> Option<usize> {
        self.segments.last().map(|s| s.left.0)
    }
}

/// Lower hull of the points `(j, v(b_j))`, where `b_j` multiplies `T^(n−j)`.
pub fn newton_polygon(poly: &MNPoly) -> Result<NewtonPolygon> {
    let n = poly.degree();
    let points: Vec<(usize, Rational)> = (0..=n)
        .filter_map(|j| match poly.point(j).valuation() {
            crate::series::Valuation::Exact(v) => Some((j, v)),
            crate::series::Valuation::AtLeast(_) => None,
        })
        .collect();
    let mut hull: Vec<(usize, Rational)> = Vec::new();
    for pt in points {
        while hull.len() >= 2 {
            let (a, b) = (&hull[hull.len() - 2], &hull[hull.len() - 1]);
            let s_ab = slope(a, b);
            let s_bc = slope(b, &pt);
            if s_bc <= s_ab {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let segments: Vec<Segment> = hull
        .windows(2)
        .map(|w| Segment { left: w[0].clone(), right: w[1].clone(), slope: slope(&w[0], &w[1]) })
        .collect();
    let last = hull.last().expect("leading coefficient is certain").clone();
    for seg in &segments {
        for j in seg.left.0 + 1..seg.right.0 {
            let b = poly.point(j);
            if b.is_empty() {
                let height = &seg.left.1 + &seg.slope * rat_int((j - seg.left.0) as i64);
                if *b.prec() < height {
                    return Err(Error::InsufficientPrecision(format!(
                        "coefficient of T^{} is known only beyond {} but the hull passes at {height}",
                        n - j,
                        b.prec()
                    )));
                }
            }
        }
    }
    let trailing = if last.0 < n {
        let bound = (last.0 + 1..=n)
            .map(|j| (poly.point(j).prec() - &last.1) / rat_int((j - last.0) as i64))
            .min()
            .expect("nonempty range");
        if let Some(s) = segments.last().map(|s| &s.slope) {
            if bound <= *s {
                return Err(Error::InsufficientPrecision(format!(
                    "vanishing low coefficients leave the root valuations above slope {s} undetermined"
                )));
            }
        }
        Some(TrailingCluster { start: last.0, multiplicity: n - last.0, bound })
    } else {
        None
    };
    Ok(NewtonPolygon { segments, trailing })
}

fn slope(a: &(usize, Rational), b: &(usize, Rational)) -> Rational {
    (&b.1 - &a.1) / rat_int((b.0 - a.0) as i64)
}

/// `Σ_{j} C_{v_left + σ(j − i_left)}(b_j) T^(i_right − j)` for one segment.
pub fn segment_residue(poly: &MNPoly, seg: &Segment) -> Result<FFPoly> {
    let (i1, v1) = (&seg.left.0, &seg.left.1);
    let i2 = seg.right.0;
    let mut coeffs = vec![poly.field().zero(); i2 - i1 + 1];
    for j in *i1..=i2 {
        let s = v1 + &seg.slope * rat_int((j - i1) as i64);
        coeffs[i2 - j] = poly.point(j).coeff(&s)?;
    }
    Ok(FFPoly::new(poly.field(), coeffs))
}

/// Residue polynomial of the segment with the largest slope.
pub fn residue_polynomial(poly: &MNPoly) -> Result<FFPoly> {
    let polygon = newton_polygon(poly)?;
    let seg = polygon.segments.last().ok_or_else(|| {
        Error::DegenerateInput("the constant term vanishes at its precision; no segment to read".into())
    })?;
    segment_residue(poly, seg)
}

/// One Newton iteration `Φ ← Φ(T + [c] p^(s_max))`; returns the increment and the shifted polynomial.
pub fn newton_step(phi: &MNPoly, c: &FFElem) -> Result<(MNSeries, MNPoly)> {
    let polygon = newton_polygon(phi)?;
    if polygon.trailing.is_some() {
        return Err(Error::DegenerateInput("Φ(0) vanishes at its precision".into()));
    }
    let seg = polygon.segments.last().ok_or_else(|| Error::DegenerateInput("constant polynomial".into()))?;
    let res = segment_residue(phi, seg)?;
    let c = crate::ff::embed(c, phi.field())?;
    if c.is_zero() || !res.eval(&c).is_zero() {
        return Err(Error::NotAResidueRoot(c.to_string()));
    }
    let shifted = phi.taylor_shift(&c, &seg.slope)?;
    // the increment is exact; its precision bound is nominal
    let nominal = &seg.slope + rat_int(1);
    Ok((MNSeries::monomial(&c, seg.slope.clone(), nominal), shifted))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchStatus {
    /// `Φ(0)` vanished at its precision: the root is known up to the precision of the digits read.
    ExactAtPrecision,
    /// The next unknown digit lies at or beyond the target exponent.
    TargetReached,
    /// The step budget ran out before the target.
    IterationCapped,
}

impl fmt::Display for BranchStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BranchStatus::ExactAtPrecision => "exact_at_precision",
            BranchStatus::TargetReached => "target_reached",
            BranchStatus::IterationCapped => "iteration_capped",
        })
    }
}

#[derive(Clone, Debug)]
pub struct NewtonBranchResult {
    /// The digits found, with precision equal to the exponent of the first unknown digit.
    pub root: MNSeries,
    pub status: BranchStatus,
    pub steps: usize,
    pub branch_path: Vec<FFElem>,
    /// Number of roots of `P` (with multiplicity) sharing these digits.
    pub multiplicity: usize,
    /// Lower bound for `v_p(P(root))` with the root's digits taken as exact.
    pub residual: Rational,
}

#[derive(Clone)]
struct Node {
    phi: MNPoly,
    digits: Vec<(Rational, FFElem)>,
    path: Vec<FFElem>,
    multiplicity: usize,
    floor: Option<Rational>,
    steps: usize,
}

impl Node {
    fn embed_into(&self, field: &Field) -> Result<Node> {
        Ok(Node {
            phi: self.phi.embed_into(field)?,
            digits: self
                .digits
                .iter()
                .map(|(e, c)| Ok((e.clone(), crate::ff::embed(c, field)?)))
                .collect::<Result<_>>()?,
            path: self.path.iter().map(|c| crate::ff::embed(c, field)).collect::<Result<_>>()?,
            ..self.clone()
        })
    }

    fn finish(&self, status: BranchStatus, prec: Rational, multiplicity: usize) -> Result<NewtonBranchResult> {
        let field = self.phi.field();
        let root = MNSeries::from_canonical(field, self.digits.clone(), prec)?;
        Ok(NewtonBranchResult {
            root,
            status,
            steps: self.steps,
            branch_path: self.path.clone(),
            multiplicity,
            residual: self.phi.coeffs()[0].val_or_prec(),
        })
    }

    /// Roots of a residue polynomial after enlarging the field until it splits.
    fn split_residue(&mut self, seg: &Segment) -> Result<Vec<FFElem>> {
        let res = segment_residue(&self.phi, seg)?;
        let field = self.phi.field().clone();
        let d = splitting_degree(res.coeffs(), &field)?;
        if d > 1 {
            let bigger = make_field(field.p(), field.degree() * d)?;
            *self = self.embed_into(&bigger)?;
            let res = segment_residue(&self.phi, seg)?;
            return poly_roots(res.coeffs(), &bigger);
        }
        poly_roots(res.coeffs(), &field)
    }

    fn descend(&self, c: &FFElem, seg: &Segment, multiplicity: usize) -> Result<Node> {
        let mut digits = self.digits.clone();
        digits.push((seg.slope.clone(), c.clone()));
        let mut path = self.path.clone();
        path.push(c.clone());
        Ok(Node {
            phi: self.phi.taylor_shift(c, &seg.slope)?,
            digits,
            path,
            multiplicity,
            floor: Some(seg.slope.clone()),
            steps: self.steps + 1,
        })
    }
}

fn root_node(poly: &MNPoly) -> Result<Node> {
    if poly.degree() == 0 {
        return Err(Error::DegenerateInput("constant polynomial has no roots".into()));
    }
    Ok(Node {
        phi: poly.clone(),
        digits: Vec::new(),
        path: Vec::new(),
        multiplicity: poly.degree(),
        floor: None,
        steps: 0,
    })
}

/// Follows the root of largest valuation, choosing the least residue root at each step.
pub fn newton_root(poly: &MNPoly, target: &Rational, max_steps: usize) -> Result<NewtonBranchResult> {
    let mut node = root_node(poly)?;
    loop {
        let polygon = newton_polygon(&node.phi)?;
        if let Some(t) = &polygon.trailing {
            return node.finish(BranchStatus::ExactAtPrecision, t.bound.clone(), t.multiplicity);
        }
        let seg = polygon.segments.last().expect("Φ(0) has terms").clone();
        if seg.slope >= *target {
            return node.finish(BranchStatus::TargetReached, seg.slope.clone(), seg.length());
        }
        if node.steps >= max_steps {
            return node.finish(BranchStatus::IterationCapped, seg.slope.clone(), seg.length());
        }
        let roots = node.split_residue(&seg)?;
        let c = roots[0].clone();
        let mult = roots.iter().filter(|r| **r == c).count();
        node = node.descend(&c, &seg, mult)?;
    }
}

/// Every branch of the Newton tree, sorted by branch path; multiplicities sum to `deg P`
/// unless a precision limit intervenes (reported as an error).
pub fn newton_all_roots(
    poly: &MNPoly,
    target: &Rational,
    max_steps: usize,
    node_budget: usize,
) -> Result<Vec<NewtonBranchResult>> {
    let mut stack = vec![root_node(poly)?];
    let mut results = Vec::new();
    let mut visited = 0usize;
    while let Some(mut node) = stack.pop() {
        visited += 1;
        if visited > node_budget {
            return Err(Error::BranchExplosion(node_budget));
        }
        let polygon = newton_polygon(&node.phi)?;
        let live: Vec<Segment> = polygon
            .segments
            .iter()
            .filter(|s| node.floor.as_ref().map_or(true, |f| s.slope > *f))
            .cloned()
            .collect();
        let trailing = polygon.trailing.clone();
        let counted: usize =
            live.iter().map(Segment::length).sum::<usize>() + trailing.as_ref().map_or(0, |t| t.multiplicity);
        if counted != node.multiplicity {
            return Err(Error::InsufficientPrecision(format!(
                "expected {} roots beyond the last digit, the polygon accounts for {counted}",
                node.multiplicity
            )));
        }
        let lowest = live
            .first()
            .map(|s| s.slope.clone())
            .or_else(|| trailing.as_ref().map(|t| t.bound.clone()))
            .expect("a node accounts for at least one root");
        if live.is_empty() || lowest >= *target {
            let status = if live.is_empty() { BranchStatus::ExactAtPrecision } else { BranchStatus::TargetReached };
            results.push(node.finish(status, lowest, node.multiplicity)?);
            continue;
        }
        if node.steps >= max_steps {
            results.push(node.finish(BranchStatus::IterationCapped, lowest, node.multiplicity)?);
            continue;
        }
        let mut children = Vec::new();
        for seg in &live {
            if seg.slope >= *target {
                results.push(node.finish(BranchStatus::TargetReached, seg.slope.clone(), seg.length())?);
                continue;
            }
            let roots = node.split_residue(seg)?;
            let mut i = 0;
            while i < roots.len() {
                let c = &roots[i];
                let mult = roots[i..].iter().take_while(|r| *r == c).count();
                children.push(node.descend(c, seg, mult)?);
                i += mult;
            }
        }
        if let Some(t) = &trailing {
            results.push(node.finish(BranchStatus::ExactAtPrecision, t.bound.clone(), t.multiplicity)?);
        }
        stack.extend(children.into_iter().rev());
    }
    unify_results(results)
}

fn unify_results(mut results: Vec<NewtonBranchResult>) -> Result<Vec<NewtonBranchResult>> {
    let k = results
        .iter()
        .fold(1u64, |acc, r| crate::arith::lcm(acc, r.root.field().degree() as u64));
    if let Some(first) = results.first() {
        let field = make_field(first.root.p(), k as usize)?;
        for r in results.iter_mut() {
            r.root = r.root.embed_into(&field)?;
            r.branch_path = r.branch_path.iter().map(|c| crate::ff::embed(c, &field)).collect::<Result<_>>()?;
        }
    }
    results.sort_by(|a, b| a.branch_path.cmp(&b.branch_path));
    Ok(results)
}

/// Evaluates `P` at the root's digits, treated as an exact element.
pub fn evaluate_at_root(poly: &MNPoly, root: &MNSeries) -> Result<MNSeries> {
    let n = poly.degree() as i64;
    let v = root.terms().first().map(|(e, _)| e.clone()).unwrap_or_else(Rational::zero);
    let top = poly.coeffs().iter().map(|c| c.prec().clone()).max().unwrap();
    let far = top.abs() + (v.abs() + rat_int(1)) * rat_int(n + 1) + rat_int(1);
    poly.eval(&root.with_exact_prec(far))
}

/// Whether `v_p(P(r)) >= s` for the root's digits `r` and its precision `s`: evaluates
/// `P(r + O(p^s))`, which is exact below `s` for integral roots. Roots of negative
/// valuation lose precision in the powers and certify only if the loss is covered.
pub fn certify_root(poly: &MNPoly, root: &MNSeries) -> Result<bool> {
    let value = poly.eval(root)?;
    Ok(value.val_or_prec() >= *root.prec())
}
