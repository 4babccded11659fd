//! The measures μ̂ and μ̄ on P¹(Q_p) and their restrictions to components.

use crate::cells::{CellScheme, Chart};
use crate::decomposer::{Analysis, Atlas, MeasureTag};
use crate::error::{Error, Result};
use crate::projective::{Ball, Disk, DiskJson, DiskTransport, HomographicMap, Mat2};
use crate::rational::{fmt_rational, pow_p_rat, vp, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

/// μ̂ gives Z_p mass p/(p+1); μ̄ splits P¹ evenly between Z_p and its complement.
pub fn mu(kind: MeasureTag, disk: &Disk) -> Rational {
    let b = ball_measure(kind, disk.base());
    if disk.is_complement() {
        Rational::one() - b
    } else {
        b
    }
}

pub fn mu_hat(disk: &Disk) -> Rational {
    mu(MeasureTag::MuHat, disk)
}

pub fn mu_bar(disk: &Disk) -> Rational {
    mu(MeasureTag::MuBar, disk)
}

fn ball_measure(kind: MeasureTag, ball: &Ball) -> Rational {
    let p = ball.p;
    let k = ball.radius_exp;
    let pr = Rational::from_integer(p.into());
    let (inner, outer) = match kind {
        MeasureTag::MuHat => {
            let w = &pr / (&pr + Rational::one());
            (w.clone(), w)
        }
        MeasureTag::MuBar => (Rational::new(1.into(), 2.into()), &pr / Rational::from_integer(2.into())),
    };
    match vp(&ball.center, p) {
        Some(j) if j < 0 && k < -j => {
            // Inside {|x| = p^{-j}}; 1/x maps it onto a ball of radius p^{k+2j}.
            outer * pow_p_rat(p, k + 2 * j)
        }
        _ if k <= 0 => inner * pow_p_rat(p, k),
        _ => {
            // Z_p together with the shell 1 < |x| ≤ p^k.
            let shell = pow_p_rat(p, -1) - pow_p_rat(p, -k - 1);
            inner + outer * shell
        }
    }
}

/// μ(x ∩ y) for two disks of P¹.
pub fn intersection_measure(kind: MeasureTag, x: &Disk, y: &Disk) -> Rational {
    if !x.meets(y) {
        Rational::zero()
    } else if x.subset_of(y) {
        mu(kind, x)
    } else if y.subset_of(x) {
        mu(kind, y)
    } else {
        mu(kind, x) + mu(kind, y) - Rational::one()
    }
}

fn chart_inverse(chart: &Chart) -> HomographicMap {
    let m = Mat2::new(
        Rational::one(),
        -chart.q.clone(),
        Rational::zero(),
        pow_p_rat(chart.p, chart.m),
    );
    HomographicMap::from_mat(m, chart.p).expect("chart matrices are invertible")
}

/// The normalized restriction of the chart measure to one component.
#[derive(Clone, Debug)]
pub struct ComponentMeasure {
    pub kind: MeasureTag,
    pub chart: Chart,
    pub index: usize,
    /// Component cells in chart coordinates.
    pub cells: Vec<Disk>,
    pub total: Rational,
    to_chart: DiskTransport,
    lookup: HashSet<Disk>,
}

impl ComponentMeasure {
    pub fn new(kind: MeasureTag, chart: Chart, index: usize, cells: Vec<Disk>) -> Self {
        let to_chart = DiskTransport::new(&chart_inverse(&chart));
        let cells: Vec<Disk> = cells.iter().map(|d| to_chart.image(d)).collect();
        let total = cells.iter().map(|d| mu(kind, d)).fold(Rational::zero(), |a, b| a + b);
        let lookup = cells.iter().cloned().collect();
        ComponentMeasure { kind, chart, index, cells, total, to_chart, lookup }
    }

    /// Component `index` of the level-n atlas.
    pub fn from_analysis(an: &Analysis, level: u32, index: usize) -> Result<Self> {
        let report = an.component_atlas(level)?;
        let atlas = report.atlas.unwrap();
        let comp = atlas.components.get(index).ok_or_else(|| {
            Error::Input(format!("component {index} out of range ({} components)", atlas.components.len()))
        })?;
        let p = an.map.p;
        let cells = comp.disks.iter().map(|j| Disk::from_json(j, p)).collect::<Result<Vec<_>>>()?;
        Ok(Self::new(an.measure_tag().unwrap(), an.chart().unwrap().clone(), index, cells))
    }

    /// Unnormalized chart measure of a disk given in the original coordinate.
    pub fn base_measure(&self, disk: &Disk) -> Rational {
        mu(self.kind, &self.to_chart.image(disk))
    }

    /// σ(disk), requiring disk to lie in the component.
    pub fn sigma(&self, disk: &Disk) -> Result<Rational> {
        let d = self.to_chart.image(disk);
        if self.lookup.contains(&d) || self.cells.iter().any(|c| d.subset_of(c)) {
            return Ok(mu(self.kind, &d) / &self.total);
        }
        let inside = self
            .cells
            .iter()
            .map(|c| intersection_measure(self.kind, &d, c))
            .fold(Rational::zero(), |a, b| a + b);
        if inside != mu(self.kind, &d) {
            return Err(Error::Domain(format!("{disk} is not contained in component {}", self.index)));
        }
        Ok(inside / &self.total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceRow {
    pub cell: DiskJson,
    pub preimage: DiskJson,
    pub lhs: String,
    pub rhs: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub level: u32,
    pub component: usize,
    pub rows: Vec<InvarianceRow>,
    pub pass: bool,
}

/// Compare σ(φ⁻¹(B)) with σ(B) on every cell B of a component.
pub fn check_invariance(an: &Analysis, level: u32, component: usize) -> Result<InvarianceReport> {
    let report = an.component_atlas(level)?;
    invariance_of(an, report.atlas.as_ref().unwrap(), component)
}

/// Invariance reports for every component of the level-n atlas.
pub fn check_invariance_all(an: &Analysis, level: u32) -> Result<Vec<InvarianceReport>> {
    let report = an.component_atlas(level)?;
    let atlas = report.atlas.as_ref().unwrap();
    (0..atlas.components.len()).map(|i| invariance_of(an, atlas, i)).collect()
}

fn invariance_of(an: &Analysis, atlas: &Atlas, component: usize) -> Result<InvarianceReport> {
    let p = an.map.p;
    let comp = atlas.components.get(component).ok_or_else(|| {
        Error::Input(format!("component {component} out of range ({} components)", atlas.components.len()))
    })?;
    let cells = comp.disks.iter().map(|j| Disk::from_json(j, p)).collect::<Result<Vec<_>>>()?;
    let kind = an.measure_tag().ok_or_else(|| Error::Domain("no invariant measure for this map".into()))?;
    let cm = ComponentMeasure::new(kind, an.chart().unwrap().clone(), component, cells.clone());
    let inv = DiskTransport::new(&an.map.invert());
    let mut rows = Vec::new();
    for (j, b) in comp.disks.iter().zip(&cells) {
        let pre = inv.image(b);
        let lhs = cm.sigma(&pre)?;
        let rhs = cm.sigma(b)?;
        rows.push(InvarianceRow {
            cell: j.clone(),
            preimage: pre.to_json(),
            ok: lhs == rhs,
            lhs: fmt_rational(&lhs),
            rhs: fmt_rational(&rhs),
        });
    }
    let pass = rows.iter().all(|r| r.ok);
    Ok(InvarianceReport { level: atlas.level, component, rows, pass })
}

/// Chart-measure weight of every level-n cell.
pub fn cell_weights(kind: MeasureTag, scheme: &CellScheme) -> Vec<Rational> {
    (0..scheme.count()).map(|i| mu(kind, &scheme.chart_disk(i))).collect()
}

/// The weights with the cell holding ∞ doubled and the rest rescaled.
pub fn corrupted_weights(kind: MeasureTag, scheme: &CellScheme) -> Vec<Rational> {
    let mut w = cell_weights(kind, scheme);
    let i = scheme.locate(&crate::projective::QPoint::Infinity) as usize;
    w[i] = &w[i] * Rational::from_integer(2.into());
    let total = w.iter().fold(Rational::zero(), |a, b| a + b);
    w.iter().map(|x| x / &total).collect()
}

/// Cells where a weight vector fails w(φ⁻¹(B)) = w(B).
pub fn weight_failures(perm: &[u64], weights: &[Rational]) -> Vec<u64> {
    let mut pre = vec![0u64; perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        pre[j as usize] = i as u64;
    }
    (0..perm.len() as u64)
        .filter(|&b| weights[pre[b as usize] as usize] != weights[b as usize])
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn trivial_values() {
        for p in [2u64, 3, 5] {
            let zp = Disk::ball(p, Rational::zero(), 0);
            let pp = Rational::from_integer(p.into());
            assert_eq!(mu_hat(&zp), &pp / (&pp + Rational::one()));
            assert_eq!(mu_hat(&Disk::complement(p, Rational::zero(), 0)), Rational::one() / (&pp + Rational::one()));
            assert_eq!(mu_bar(&zp), rat(1, 2));
            assert_eq!(mu_bar(&Disk::complement(p, Rational::zero(), 0)), rat(1, 2));
            assert_eq!(mu_hat(&Disk::ball(p, Rational::zero(), -1)), Rational::one() / (&pp + Rational::one()));
        }
    }

    #[test]
    fn additivity_and_mass() {
        for kind in [MeasureTag::MuHat, MeasureTag::MuBar] {
            for p in [2u64, 3, 5] {
                for k in -3i64..=3 {
                    for c in [rat(0, 1), rat(1, 1), rat(1, p as i64), rat(2, (p * p) as i64), rat(7, 1)] {
                        let parent = Ball::new(p, c, k);
                        let kids: Rational = (0..p)
                            .map(|i| {
                                let off = pow_p_rat(p, -k) * Rational::from_integer(i.into());
                                ball_measure(kind, &Ball::new(p, &parent.center + off, k - 1))
                            })
                            .fold(Rational::zero(), |a, b| a + b);
                        assert_eq!(kids, ball_measure(kind, &parent), "{kind:?} {parent}");
                    }
                }
            }
        }
    }

    #[test]
    fn invariance_on_small_maps() {
        use crate::decomposer::{analyze, Options};
        let mut checked = 0;
        for p in [2u64, 3] {
            for (a, b, c, d) in [(0, 1, 1, 1), (1, 1, 1, 2), (1, 2, 1, -1), (2, -1, 1, 1), (1, -1, 2, 1), (0, 3, 1, 0)] {
                let phi = HomographicMap::from_ints(a, b, c, d, p).unwrap();
                let an = analyze(&phi, &Options::default()).unwrap();
                if an.closed.is_none() {
                    continue;
                }
                let s = an.stabilization_level().unwrap();
                let k = an.closed.as_ref().unwrap().count as usize;
                for n in s..=s + 1 {
                    for i in 0..k {
                        let r = check_invariance(&an, n, i).unwrap();
                        assert!(r.pass, "{phi} p={p} n={n} component {i}");
                    }
                    let lc = an.level_cycles(n).unwrap();
                    let kind = an.measure_tag().unwrap();
                    assert!(weight_failures(&lc.perm, &cell_weights(kind, &lc.scheme)).is_empty());
                    assert!(!weight_failures(&lc.perm, &corrupted_weights(kind, &lc.scheme)).is_empty());
                    checked += 1;
                }
            }
        }
        assert!(checked >= 8);
    }
}
