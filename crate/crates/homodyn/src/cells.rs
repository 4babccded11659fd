//! Level-n cell complexes of P¹(Q_p) around a vertex or an edge of the
//! Bruhat–Tits tree, and the permutation a homography induces on them.
//!
//! A chart is the affine map A(z) = q + p^m z. In chart coordinates the
//! vertex complex at level n has p^n inside cells D̄(a, p^{-n}), a ∈ Z/p^n,
//! and p^{n-1} outside cells {1/z ≡ w mod p^n}, w ∈ pZ/p^n. The edge complex
//! has p^n inside cells and p^n outside cells {1/(pz) ≡ b mod p^n}.

use crate::error::{Error, Result};
use crate::projective::{Disk, HomographicMap, Mat2, QPoint};
use crate::rational::{self, pow_p_rat, reduce_mod_pj, residue_u64, vp, Rational};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChartKind {
    Vertex,
    Edge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    pub p: u64,
    pub q: Rational,
    pub m: i64,
    pub kind: ChartKind,
}

impl Chart {
    pub fn new(p: u64, q: Rational, m: i64, kind: ChartKind) -> Self {
        let q = reduce_mod_pj(&q, p, m);
        Chart { p, q, m, kind }
    }

    pub fn identity(p: u64) -> Self {
        Chart { p, q: Rational::zero(), m: 0, kind: ChartKind::Vertex }
    }

    pub fn matrix(&self) -> Mat2 {
        Mat2::new(pow_p_rat(self.p, self.m), self.q.clone(), Rational::zero(), Rational::one())
    }

    pub fn to_chart(&self, x: &QPoint) -> QPoint {
        match x {
            QPoint::Infinity => QPoint::Infinity,
            QPoint::Finite(x) => QPoint::Finite((x - &self.q) * pow_p_rat(self.p, -self.m)),
        }
    }

    pub fn from_chart(&self, z: &QPoint) -> QPoint {
        match z {
            QPoint::Infinity => QPoint::Infinity,
            QPoint::Finite(z) => QPoint::Finite(&self.q + z * pow_p_rat(self.p, self.m)),
        }
    }

    pub fn disk_from_chart(&self, d: &Disk) -> Disk {
        let b = d.base();
        let c = &self.q + &b.center * pow_p_rat(self.p, self.m);
        let k = b.radius_exp - self.m;
        if d.is_complement() {
            Disk::complement(self.p, c, k)
        } else {
            Disk::ball(self.p, c, k)
        }
    }

    /// ψ = A⁻¹φA scaled to be primitive.
    pub fn conjugate(&self, phi: &HomographicMap) -> Mat2 {
        let a = self.matrix();
        a.adjugate().mul(&phi.m).mul(&a).primitive(self.p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CellCoord {
    Inside(u64),
    Outside(u64),
}

/// The level-n cells of a chart.
#[derive(Clone, Debug)]
pub struct CellScheme {
    pub chart: Chart,
    pub level: u32,
    modulus: u64,
}

pub fn checked_pow(p: u64, n: u32) -> Option<u64> {
    p.checked_pow(n).filter(|&m| m < (1u64 << 62))
}

impl CellScheme {
    pub fn new(chart: Chart, level: u32) -> Result<Self> {
        if level == 0 {
            return Err(Error::Input("cell level must be at least 1".into()));
        }
        let modulus = checked_pow(chart.p, level)
            .ok_or_else(|| Error::Budget(format!("p^{level} does not fit machine arithmetic")))?;
        Ok(CellScheme { chart, level, modulus })
    }

    pub fn p(&self) -> u64 {
        self.chart.p
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn outside_count(&self) -> u64 {
        match self.chart.kind {
            ChartKind::Vertex => self.modulus / self.chart.p,
            ChartKind::Edge => self.modulus,
        }
    }

    pub fn count(&self) -> u64 {
        self.modulus + self.outside_count()
    }

    pub fn coord(&self, idx: u64) -> CellCoord {
        if idx < self.modulus {
            return CellCoord::Inside(idx);
        }
        let j = idx - self.modulus;
        match self.chart.kind {
            ChartKind::Vertex => CellCoord::Outside(j * self.chart.p),
            ChartKind::Edge => CellCoord::Outside(j),
        }
    }

    pub fn index(&self, c: CellCoord) -> u64 {
        match (c, self.chart.kind) {
            (CellCoord::Inside(a), _) => a,
            (CellCoord::Outside(w), ChartKind::Vertex) => self.modulus + w / self.chart.p,
            (CellCoord::Outside(b), ChartKind::Edge) => self.modulus + b,
        }
    }

    /// The cell as a disk in chart coordinates.
    pub fn chart_disk(&self, idx: u64) -> Disk {
        let p = self.chart.p;
        let n = self.level as i64;
        match (self.coord(idx), self.chart.kind) {
            (CellCoord::Inside(a), _) => Disk::ball(p, rational::int(a as i64), -n),
            (CellCoord::Outside(0), ChartKind::Vertex) => Disk::complement(p, Rational::zero(), n - 1),
            (CellCoord::Outside(0), ChartKind::Edge) => Disk::complement(p, Rational::zero(), n),
            (CellCoord::Outside(w), ChartKind::Vertex) => {
                let w = rational::int(w as i64);
                let v = vp(&w, p).unwrap();
                Disk::ball(p, Rational::one() / w, 2 * v - n)
            }
            (CellCoord::Outside(b), ChartKind::Edge) => {
                let b = rational::int(b as i64);
                let v = vp(&b, p).unwrap();
                Disk::ball(p, Rational::one() / (rational::int(p as i64) * b), 1 + 2 * v - n)
            }
        }
    }

    pub fn disk(&self, idx: u64) -> Disk {
        self.chart.disk_from_chart(&self.chart_disk(idx))
    }

    /// Two distinct exact points of the cell.
    pub fn representatives(&self, idx: u64) -> [QPoint; 2] {
        let p = self.chart.p as i64;
        let m = rational::int(self.modulus as i64);
        let z = match self.coord(idx) {
            CellCoord::Inside(a) => {
                let a = rational::int(a as i64);
                [QPoint::Finite(a.clone()), QPoint::Finite(a + m)]
            }
            CellCoord::Outside(w) => {
                let s = match self.chart.kind {
                    ChartKind::Vertex => Rational::one(),
                    ChartKind::Edge => rational::int(p),
                };
                let w = rational::int(w as i64);
                let first = if w.is_zero() {
                    QPoint::Infinity
                } else {
                    QPoint::Finite(Rational::one() / (&s * &w))
                };
                [first, QPoint::Finite(Rational::one() / (s * (w + m)))]
            }
        };
        [self.chart.from_chart(&z[0]), self.chart.from_chart(&z[1])]
    }

    /// The cell containing an exact point.
    pub fn locate(&self, x: &QPoint) -> u64 {
        let p = self.chart.p;
        let n = self.level;
        let z = match self.chart.to_chart(x) {
            QPoint::Infinity => return self.modulus,
            QPoint::Finite(z) => z,
        };
        if vp(&z, p).map(|v| v >= 0).unwrap_or(true) {
            return residue_u64(&z, p, n).unwrap();
        }
        let y = match self.chart.kind {
            ChartKind::Vertex => Rational::one() / z,
            ChartKind::Edge => Rational::one() / (rational::int(p as i64) * z),
        };
        self.index(CellCoord::Outside(residue_u64(&y, p, n).unwrap()))
    }

    /// Index of the level n−1 cell containing a level-n cell.
    pub fn parent(&self, idx: u64) -> u64 {
        assert!(self.level >= 2, "level-1 cells have no parent");
        let pm = self.modulus / self.chart.p;
        match self.coord(idx) {
            CellCoord::Inside(a) => a % pm,
            CellCoord::Outside(w) => match self.chart.kind {
                ChartKind::Vertex => pm + (w % pm) / self.chart.p,
                ChartKind::Edge => pm + w % pm,
            },
        }
    }

    pub fn coarser(&self) -> Result<CellScheme> {
        CellScheme::new(self.chart.clone(), self.level - 1)
    }
}

/// How the conjugated map acts on the chart's cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ActionKind {
    /// ψ ∈ GL2(Z_p), fixing the vertex.
    General,
    /// ψ in the Iwahori subgroup, fixing the edge and both ends.
    Iwahori,
    /// ψ = M·W with M Iwahori and W = [[0,1],[p,0]], flipping the edge.
    Flip,
}

#[derive(Clone, Debug)]
pub struct ChartAction {
    pub chart: Chart,
    pub psi: Mat2,
    pub kind: ActionKind,
    /// The matrix applied after the flip (ψ itself otherwise).
    inner: Mat2,
}

fn is_unit(x: &Rational, p: u64) -> bool {
    vp(x, p) == Some(0)
}

fn is_integral(x: &Rational, p: u64) -> bool {
    vp(x, p).map(|v| v >= 0).unwrap_or(true)
}

fn is_iwahori(m: &Mat2, p: u64) -> bool {
    m.entries().iter().all(|x| is_integral(x, p))
        && is_unit(&m.a, p)
        && is_unit(&m.d, p)
        && vp(&m.c, p).map(|v| v >= 1).unwrap_or(true)
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

impl ChartAction {
    /// Conjugate φ into the chart; fails unless φ stabilizes the chart's
    /// vertex or edge.
    pub fn new(phi: &HomographicMap, chart: &Chart) -> Result<Self> {
        let p = chart.p;
        let psi = chart.conjugate(phi);
        let (kind, inner) = match chart.kind {
            ChartKind::Vertex => {
                if vp(&psi.det(), p) != Some(0) {
                    return Err(Error::Domain(format!(
                        "map does not fix the vertex D̄({}, p^{})",
                        rational::fmt_rational(&chart.q),
                        -chart.m
                    )));
                }
                (ActionKind::General, psi.clone())
            }
            ChartKind::Edge => {
                if is_iwahori(&psi, p) {
                    (ActionKind::Iwahori, psi.clone())
                } else {
                    let w = Mat2::new(Rational::zero(), Rational::one(), rational::int(p as i64), Rational::zero());
                    let m = psi.mul(&w).primitive(p);
                    if !is_iwahori(&m, p) {
                        return Err(Error::Domain("map does not fix the chart edge".into()));
                    }
                    (ActionKind::Flip, m)
                }
            }
        };
        Ok(ChartAction { chart: chart.clone(), psi, kind, inner })
    }

    /// The permutation of level-n cells, computed with residues mod p^n.
    pub fn permutation(&self, scheme: &CellScheme) -> Vec<u64> {
        let p = self.chart.p;
        let n = scheme.level;
        let md = scheme.modulus();
        let r = |x: &Rational| residue_u64(x, p, n).expect("integral entry");
        let m = &self.inner;
        let (al, be, ga, de) = (r(&m.a), r(&m.b), r(&m.c), r(&m.d));
        let count = scheme.count();
        let mut out = Vec::with_capacity(count as usize);
        match self.kind {
            ActionKind::General => {
                for idx in 0..count {
                    let (x, y) = match scheme.coord(idx) {
                        CellCoord::Inside(a) => (a, 1),
                        CellCoord::Outside(w) => (1, w),
                    };
                    let x2 = (mul_mod(al, x, md) + mul_mod(be, y, md)) % md;
                    let y2 = (mul_mod(ga, x, md) + mul_mod(de, y, md)) % md;
                    let c = if y2 % p != 0 {
                        CellCoord::Inside(mul_mod(x2, inv_mod(y2, md).unwrap(), md))
                    } else {
                        CellCoord::Outside(mul_mod(y2, inv_mod(x2, md).expect("primitive image"), md))
                    };
                    out.push(scheme.index(c));
                }
            }
            ActionKind::Iwahori | ActionKind::Flip => {
                let gp = r(&(&m.c / rational::int(p as i64)));
                let pb = r(&(&m.b * rational::int(p as i64)));
                for idx in 0..count {
                    let mut c = scheme.coord(idx);
                    if self.kind == ActionKind::Flip {
                        c = match c {
                            CellCoord::Inside(a) => CellCoord::Outside(a),
                            CellCoord::Outside(b) => CellCoord::Inside(b),
                        };
                    }
                    let img = match c {
                        CellCoord::Inside(a) => {
                            let num = (mul_mod(al, a, md) + be) % md;
                            let den = (mul_mod(ga, a, md) + de) % md;
                            CellCoord::Inside(mul_mod(num, inv_mod(den, md).unwrap(), md))
                        }
                        CellCoord::Outside(b) => {
                            let num = (gp + mul_mod(de, b, md)) % md;
                            let den = (al + mul_mod(pb, b, md)) % md;
                            CellCoord::Outside(mul_mod(num, inv_mod(den, md).unwrap(), md))
                        }
                    };
                    out.push(scheme.index(img));
                }
            }
        }
        out
    }
}

/// The cycles of a self-map of {0..n}; points on tails are omitted.
pub fn cycles_of(f: &[u64]) -> Vec<Vec<u64>> {
    let n = f.len();
    let mut state = vec![0u8; n];
    let mut cycles = Vec::new();
    for start in 0..n {
        if state[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut x = start;
        while state[x] == 0 {
            state[x] = 1;
            path.push(x);
            x = f[x] as usize;
        }
        if state[x] == 1 {
            let pos = path.iter().position(|&y| y == x).unwrap();
            cycles.push(path[pos..].iter().map(|&y| y as u64).collect());
        }
        for y in path {
            state[y] = 2;
        }
    }
    cycles
}

pub fn is_permutation(f: &[u64]) -> bool {
    let mut seen = vec![false; f.len()];
    for &y in f {
        let y = y as usize;
        if y >= f.len() || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projective::image_of_disk;
    use crate::rational::{int, rat};

    fn golden(p: u64) -> HomographicMap {
        HomographicMap::from_ints(0, 1, 1, 1, p).unwrap()
    }

    #[test]
    fn example_one_level_one_is_a_four_cycle() {
        let chart = Chart::identity(3);
        let s = CellScheme::new(chart.clone(), 1).unwrap();
        let perm = ChartAction::new(&golden(3), &chart).unwrap().permutation(&s);
        let cyc = cycles_of(&perm);
        assert_eq!(cyc.len(), 1);
        assert_eq!(cyc[0].len(), 4);
    }

    #[test]
    fn example_two_level_three() {
        let chart = Chart::identity(2);
        let s = CellScheme::new(chart.clone(), 3).unwrap();
        let perm = ChartAction::new(&golden(2), &chart).unwrap().permutation(&s);
        let mut lens: Vec<usize> = cycles_of(&perm).iter().map(|c| c.len()).collect();
        lens.sort();
        assert_eq!(lens, vec![6, 6]);
        assert_eq!(s.locate(&QPoint::Finite(rat(1, 3))), s.locate(&QPoint::int(3)));
    }

    #[test]
    fn cells_partition_and_locate() {
        for kind in [ChartKind::Vertex, ChartKind::Edge] {
            let chart = Chart::new(3, rat(1, 2), 1, kind);
            let s = CellScheme::new(chart, 2).unwrap();
            for idx in 0..s.count() {
                let d = s.disk(idx);
                for r in s.representatives(idx) {
                    assert!(d.contains(&r), "{kind:?} {idx} {d}");
                    assert_eq!(s.locate(&r), idx);
                }
                for j in 0..s.count() {
                    if j != idx {
                        assert!(!d.meets(&s.disk(j)));
                    }
                }
            }
        }
    }

    #[test]
    fn modular_action_matches_disk_transport() {
        let p = 3;
        let cases = [
            ((1, 1, 3, -2), ChartKind::Vertex, ActionKind::General),
            ((1, 1, 3, 2), ChartKind::Edge, ActionKind::Iwahori),
            ((3, 1, 6, 3), ChartKind::Edge, ActionKind::Flip),
        ];
        for ((a, b, c, d), kind, expect) in cases {
            let phi = HomographicMap::from_ints(a, b, c, d, p).unwrap();
            let chart = Chart::new(p, int(0), 0, kind);
            let act = ChartAction::new(&phi, &chart).unwrap();
            assert_eq!(act.kind, expect);
            for level in 1..=3 {
                let s = CellScheme::new(chart.clone(), level).unwrap();
                let perm = act.permutation(&s);
                assert!(is_permutation(&perm));
                for idx in 0..s.count() {
                    assert_eq!(image_of_disk(&phi, &s.disk(idx)), s.disk(perm[idx as usize]));
                }
            }
        }
    }

    #[test]
    fn cycles_with_tails() {
        let f = vec![1, 2, 1, 0];
        assert_eq!(cycles_of(&f), vec![vec![1, 2]]);
        assert!(!is_permutation(&f));
        assert_eq!(inv_mod(2, 9), Some(5));
    }
}
