//! Points of the doubled framed representation space `V ⊕ V*` over `F_p`,
//! the derived action `ϱ(X)` and the moment map pairing.
//!
//! `V*` is realized by matrices of transposed shapes with the trace pairing
//! `<φ, ψ> = Σ tr(ψ_e φ_e) + Σ tr(ψ_i φ_i)`.

use super::field::{Fp, Mat};
use crate::error::{Error, Result};
use crate::quiver::{dim_group, dim_rep_space, DimVector, Quiver};

/// One block of `V`: an arrow map `V_s -> V_t` or a framing map `W_i -> V_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockKind {
    Arrow { source: usize, target: usize },
    Framing { vertex: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub kind: BlockKind,
    pub rows: usize,
    pub cols: usize,
    pub offset: usize,
}

/// `φ = (φ_e, φ_i)`, one matrix per block. Arrow blocks are
/// `v_t × v_s`, framing blocks `v_i × w_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpRep {
    pub blocks: Vec<Mat>,
}

/// `ψ = (ψ_e, ψ_i)` with the transposed shapes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpDual {
    pub blocks: Vec<Mat>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoint {
    pub phi: FpRep,
    pub psi: FpDual,
}

/// An element `X = (X_i)` of `g_v`.
pub type GlElement = Vec<Mat>;

/// Coordinates and shapes for `V_{v,w}` over a fixed prime field.
#[derive(Debug, Clone)]
pub struct RepSpace {
    pub quiver: Quiver,
    pub v: DimVector,
    pub w: DimVector,
    pub field: Fp,
    blocks: Vec<Block>,
    dim: usize,
}

impl RepSpace {
    pub fn new(quiver: &Quiver, v: &DimVector, w: &DimVector, field: Fp) -> Result<Self> {
        let dim = dim_rep_space(quiver, v, w)? as usize;
        let mut blocks = Vec::new();
        let mut offset = 0;
        for &(s, t) in quiver.arrows() {
            let (rows, cols) = (v[t] as usize, v[s] as usize);
            blocks.push(Block {
                kind: BlockKind::Arrow { source: s, target: t },
                rows,
                cols,
                offset,
            });
            offset += rows * cols;
        }
        for i in 0..quiver.vertex_count() {
            let (rows, cols) = (v[i] as usize, w[i] as usize);
            blocks.push(Block {
                kind: BlockKind::Framing { vertex: i },
                rows,
                cols,
                offset,
            });
            offset += rows * cols;
        }
        debug_assert_eq!(offset, dim);
        Ok(Self {
            quiver: quiver.clone(),
            v: v.clone(),
            w: w.clone(),
            field,
            blocks,
            dim,
        })
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// `dim V_{v,w}`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `dim g_v`.
    pub fn dim_group(&self) -> usize {
        dim_group(&self.v) as usize
    }

    pub fn rep_from_coords(&self, coords: &[u32]) -> FpRep {
        assert_eq!(coords.len(), self.dim, "coordinate count");
        FpRep {
            blocks: self
                .blocks
                .iter()
                .map(|b| Mat {
                    rows: b.rows,
                    cols: b.cols,
                    data: coords[b.offset..b.offset + b.rows * b.cols].to_vec(),
                })
                .collect(),
        }
    }

    /// Dual coordinates use the same offsets; entry `(r, c)` of a dual block
    /// pairs with entry `(c, r)` of the matching `φ` block.
    pub fn dual_from_coords(&self, coords: &[u32]) -> FpDual {
        assert_eq!(coords.len(), self.dim, "coordinate count");
        FpDual {
            blocks: self
                .blocks
                .iter()
                .map(|b| Mat {
                    rows: b.cols,
                    cols: b.rows,
                    data: coords[b.offset..b.offset + b.rows * b.cols].to_vec(),
                })
                .collect(),
        }
    }

    pub fn rep_coords(&self, phi: &FpRep) -> Vec<u32> {
        phi.blocks.iter().flat_map(|m| m.data.iter().copied()).collect()
    }

    pub fn zero_rep(&self) -> FpRep {
        self.rep_from_coords(&vec![0; self.dim])
    }

    /// `X` from `Σ v_i^2` coordinates, vertex by vertex, row-major.
    pub fn gl_from_coords(&self, coords: &[u32]) -> GlElement {
        assert_eq!(coords.len(), self.dim_group(), "coordinate count");
        let mut offset = 0;
        self.v
            .entries()
            .iter()
            .map(|&n| {
                let n = n as usize;
                let m = Mat {
                    rows: n,
                    cols: n,
                    data: coords[offset..offset + n * n].to_vec(),
                };
                offset += n * n;
                m
            })
            .collect()
    }

    /// The elementary matrices `E_{ab}` at each vertex, in coordinate order,
    /// with `tr E_{ab}`.
    pub fn gl_basis(&self) -> Vec<(GlElement, u32)> {
        let n = self.dim_group();
        (0..n)
            .map(|k| {
                let mut coords = vec![0; n];
                coords[k] = 1;
                let x = self.gl_from_coords(&coords);
                let tr = x.iter().fold(0, |acc, m| self.field.add(acc, m.trace(self.field)));
                (x, tr)
            })
            .collect()
    }

    fn check_gl(&self, x: &[Mat]) -> Result<()> {
        let ok = x.len() == self.v.len()
            && x.iter().zip(self.v.entries()).all(|(m, &n)| m.shape() == (n as usize, n as usize));
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                context: "element of g_v".into(),
            })
        }
    }

    fn check_rep(&self, blocks: &[Mat], transposed: bool) -> Result<()> {
        let ok = blocks.len() == self.blocks.len()
            && blocks.iter().zip(&self.blocks).all(|(m, b)| {
                let want = if transposed { (b.cols, b.rows) } else { (b.rows, b.cols) };
                m.shape() == want
            });
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                context: if transposed { "dual representation" } else { "representation" }.into(),
            })
        }
    }

    /// `ϱ(X)φ = (X_t φ_e - φ_e X_s, X_i φ_i)`.
    pub fn apply_rho_derivative(&self, x: &[Mat], phi: &FpRep) -> Result<FpRep> {
        self.check_gl(x)?;
        self.check_rep(&phi.blocks, false)?;
        let f = self.field;
        let blocks = self
            .blocks
            .iter()
            .zip(&phi.blocks)
            .map(|(b, m)| match b.kind {
                BlockKind::Arrow { source, target } => x[target].mul(m, f)?.sub(&m.mul(&x[source], f)?, f),
                BlockKind::Framing { vertex } => x[vertex].mul(m, f),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FpRep { blocks })
    }

    /// Trace pairing `<φ, ψ>`.
    pub fn pair(&self, phi: &FpRep, psi: &FpDual) -> Result<u32> {
        self.check_rep(&phi.blocks, false)?;
        self.check_rep(&psi.blocks, true)?;
        let f = self.field;
        let mut acc = 0;
        for (m, d) in phi.blocks.iter().zip(&psi.blocks) {
            acc = f.add(acc, d.mul(m, f)?.trace(f));
        }
        Ok(acc)
    }

    /// `<μ(φ, ψ), X> = <ϱ(X)φ, ψ>`.
    pub fn moment_pairing(&self, point: &FpPoint, x: &[Mat]) -> Result<u32> {
        let image = self.apply_rho_derivative(x, &point.phi)?;
        self.pair(&image, &point.psi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(x: &[u32]) -> DimVector {
        DimVector(x.to_vec())
    }

    fn scalar(x: u32) -> Mat {
        Mat::from_rows(&[&[x]])
    }

    #[test]
    fn derivative_examples() {
        let f = Fp::new(5).unwrap();
        let space = RepSpace::new(&Quiver::jordan(), &dv(&[1]), &dv(&[1]), f).unwrap();
        let phi = space.rep_from_coords(&[3, 4]);
        let zero_x = vec![scalar(0)];
        assert_eq!(space.apply_rho_derivative(&zero_x, &phi).unwrap(), space.zero_rep());
        // xa - ax = 0 in dimension one, framing picks up x b
        let img = space.apply_rho_derivative(&[scalar(2)], &phi).unwrap();
        assert_eq!(space.rep_coords(&img), vec![0, f.mul(2, 4)]);

        let single = RepSpace::new(&Quiver::single_vertex(), &dv(&[1]), &dv(&[1]), f).unwrap();
        let phi = single.rep_from_coords(&[3]);
        assert_eq!(single.apply_rho_derivative(&[Mat::identity(1)], &phi).unwrap(), phi);
    }

    #[test]
    fn moment_pairing_examples() {
        let f = Fp::new(7).unwrap();
        let space = RepSpace::new(&Quiver::jordan(), &dv(&[1]), &dv(&[1]), f).unwrap();
        for (a, b, c, d, x) in [(1, 2, 3, 4, 5), (6, 0, 2, 3, 1), (2, 5, 5, 6, 3)] {
            let pt = FpPoint {
                phi: space.rep_from_coords(&[a, b]),
                psi: space.dual_from_coords(&[c, d]),
            };
            assert_eq!(space.moment_pairing(&pt, &[scalar(x)]).unwrap(), f.mul(x, f.mul(b, d)));
            assert_eq!(space.moment_pairing(&pt, &[scalar(0)]).unwrap(), 0);
            let doubled = FpPoint {
                phi: pt.phi.clone(),
                psi: space.dual_from_coords(&[f.mul(2, c), f.mul(2, d)]),
            };
            assert_eq!(
                space.moment_pairing(&doubled, &[scalar(x)]).unwrap(),
                f.mul(2, space.moment_pairing(&pt, &[scalar(x)]).unwrap())
            );
        }
    }

    #[test]
    fn shape_errors() {
        let f = Fp::new(3).unwrap();
        let space = RepSpace::new(&Quiver::jordan(), &dv(&[2]), &dv(&[1]), f).unwrap();
        let phi = space.zero_rep();
        assert!(matches!(
            space.apply_rho_derivative(&[Mat::identity(1)], &phi),
            Err(Error::ShapeMismatch { .. })
        ));
        let bad = FpRep { blocks: vec![Mat::zeros(1, 1)] };
        assert!(space.apply_rho_derivative(&[Mat::identity(2)], &bad).is_err());
    }

    #[test]
    fn derivative_is_linear() {
        use rand::{Rng, SeedableRng};
        let f = Fp::new(5).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for q in [Quiver::jordan(), Quiver::a2(), Quiver::kronecker(), Quiver::star3()] {
            let n = q.vertex_count();
            let v = DimVector((0..n).map(|i| 1 + (i as u32 % 2)).collect());
            let w = DimVector((0..n).map(|i| (i as u32 + 1) % 3).collect());
            let space = RepSpace::new(&q, &v, &w, f).unwrap();
            let mut rand_coords = |k: usize| -> Vec<u32> { (0..k).map(|_| rng.gen_range(0..5)).collect() };
            for _ in 0..20 {
                let x1 = space.gl_from_coords(&rand_coords(space.dim_group()));
                let x2 = space.gl_from_coords(&rand_coords(space.dim_group()));
                let p1 = space.rep_from_coords(&rand_coords(space.dim()));
                let p2 = space.rep_from_coords(&rand_coords(space.dim()));
                let c = rand_coords(1)[0];
                let xsum: GlElement = x1.iter().zip(&x2).map(|(a, b)| a.add(&b.scale(c, f), f).unwrap()).collect();
                let lhs = space.apply_rho_derivative(&xsum, &p1).unwrap();
                let r1 = space.rep_coords(&space.apply_rho_derivative(&x1, &p1).unwrap());
                let r2 = space.rep_coords(&space.apply_rho_derivative(&x2, &p1).unwrap());
                let rhs: Vec<u32> = r1.iter().zip(&r2).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
                assert_eq!(space.rep_coords(&lhs), rhs);

                let psum: Vec<u32> = space
                    .rep_coords(&p1)
                    .iter()
                    .zip(space.rep_coords(&p2))
                    .map(|(&a, b)| f.add(a, f.mul(c, b)))
                    .collect();
                let lhs = space.apply_rho_derivative(&x1, &space.rep_from_coords(&psum)).unwrap();
                let s1 = space.rep_coords(&space.apply_rho_derivative(&x1, &p1).unwrap());
                let s2 = space.rep_coords(&space.apply_rho_derivative(&x1, &p2).unwrap());
                let rhs: Vec<u32> = s1.iter().zip(&s2).map(|(&a, &b)| f.add(a, f.mul(c, b))).collect();
                assert_eq!(space.rep_coords(&lhs), rhs);
            }
        }
    }
}
