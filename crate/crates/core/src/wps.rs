//! Singularity analysis of generic quasi-smooth hypersurfaces
//! `X_d` in `P(a0, a1, a2, a3)`.
//!
//! Everything here depends only on which monomials of degree `d` exist,
//! never on their coefficients: the families are assumed generic. Vertices
//! of the ambient space lie on a generic member exactly when no pure power
//! of the corresponding coordinate has degree `d`; singular edges are cut
//! down by the restricted binary form.

use std::fmt;

use num_integer::gcd;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weighted hypersurface family: four weights and a degree.
///
/// `quasi_smooth` is an input assumption, not a verified property; it is
/// carried into certificates as a standing assumption.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedFamily {
    pub name: String,
    pub weights: [u64; 4],
    pub degree: u64,
    pub quasi_smooth: bool,
}

/// Where a singular point sits: a coordinate vertex, or one of the points
/// cut out on a singular edge (indexed within the edge).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Locus {
    Vertex(usize),
    Edge { i: usize, j: usize, point: usize },
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Locus::Vertex(i) => write!(f, "vertex {i}"),
            Locus::Edge { i, j, point } => write!(f, "edge ({i},{j}) point {point}"),
        }
    }
}

/// An isolated A_n point: locally the quotient of the plane by a cyclic
/// group of order n+1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SingularPoint {
    pub n: u64,
    pub locus: Locus,
}

impl fmt::Display for SingularPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A{} ({})", self.n, self.locus)
    }
}

impl WeightedFamily {
    pub fn new(
        name: impl Into<String>,
        weights: [u64; 4],
        degree: u64,
        quasi_smooth: bool,
    ) -> Result<Self> {
        if weights.iter().any(|&w| w == 0) || degree == 0 {
            return Err(Error::InvalidParameter(
                "weights and degree must be positive".into(),
            ));
        }
        Ok(WeightedFamily {
            name: name.into(),
            weights,
            degree,
            quasi_smooth,
        })
    }

    /// Well-formed: every three of the four weights are coprime.
    pub fn well_formed(&self) -> bool {
        let w = &self.weights;
        (0..4).all(|skip| {
            let mut g = 0;
            for (i, &wi) in w.iter().enumerate() {
                if i != skip {
                    g = gcd(g, wi);
                }
            }
            g == 1
        })
    }

    /// A vertex lies on a generic member iff no pure power of its
    /// coordinate has degree `d`, i.e. iff the weight does not divide `d`.
    pub fn vertex_on_surface(&self, i: usize) -> bool {
        self.degree % self.weights[i] != 0
    }

    /// Type of the vertex singularity: A_{a_i - 1}.
    pub fn vertex_type(&self, i: usize) -> Result<SingularPoint> {
        let a = self.weights[i];
        if a == 1 {
            return Err(Error::SmoothPoint(i));
        }
        if !self.vertex_on_surface(i) {
            return Err(Error::NotOnSurface(i));
        }
        Ok(SingularPoint {
            n: a - 1,
            locus: Locus::Vertex(i),
        })
    }

    /// All monomials supported on coordinates i, j in degree `d`.
    fn edge_monomials(&self, i: usize, j: usize) -> Vec<(u64, u64)> {
        let (ai, aj, d) = (self.weights[i], self.weights[j], self.degree);
        (0..=d / ai)
            .filter_map(|p| {
                let rest = d - p * ai;
                (rest % aj == 0).then_some((p, rest / aj))
            })
            .collect()
    }

    /// Singular points cut out on the edge between vertices i and j.
    ///
    /// The restriction of a generic member to the edge is the binary form
    /// spanned by the degree-d monomials in the two coordinates. Common
    /// powers of either coordinate are factored out (their zeros are the
    /// vertices, handled separately); the residual form, rewritten in the
    /// well-formed edge weights, vanishes at
    /// `floor(d_red / ((a_i/g)(a_j/g)))` points, each of type A_{g-1}.
    pub fn edge_points(&self, i: usize, j: usize) -> Result<Vec<SingularPoint>> {
        if i == j {
            return Err(Error::InvalidParameter("edge needs two distinct vertices".into()));
        }
        let (ai, aj) = (self.weights[i], self.weights[j]);
        let g = gcd(ai, aj);
        if g < 2 {
            return Ok(Vec::new());
        }
        let monomials = self.edge_monomials(i, j);
        if monomials.is_empty() {
            return Err(Error::EmptyRestriction {
                i,
                j,
                degree: self.degree,
            });
        }
        let p_min = monomials.iter().map(|&(p, _)| p).min().unwrap();
        let q_min = monomials.iter().map(|&(_, q)| q).min().unwrap();
        let d_res = self.degree - p_min * ai - q_min * aj;
        // every residual monomial has degree divisible by g
        debug_assert_eq!(d_res % g, 0);
        let d_red = d_res / g;
        let (wi, wj) = (ai / g, aj / g);
        let count = d_red / (wi * wj);
        Ok((0..count as usize)
            .map(|point| SingularPoint {
                n: g - 1,
                locus: Locus::Edge { i, j, point },
            })
            .collect())
    }

    /// Full singularity content of a generic member, ordered by (n, locus).
    pub fn singularity_content(&self) -> Result<Vec<SingularPoint>> {
        if !self.well_formed() {
            return Err(Error::NotWellFormed(format!(
                "weights ({},{},{},{}) share a common factor on a triple",
                self.weights[0], self.weights[1], self.weights[2], self.weights[3]
            )));
        }
        let mut points = Vec::new();
        for i in 0..4 {
            if self.weights[i] >= 2 && self.vertex_on_surface(i) {
                points.push(self.vertex_type(i)?);
            }
        }
        for i in 0..4 {
            for j in (i + 1)..4 {
                points.extend(self.edge_points(i, j)?);
            }
        }
        points.sort();
        Ok(points)
    }
}

/// Renders a multiset of singularity indices as "A1,A4,A7".
pub fn type_list(points: &[SingularPoint]) -> String {
    let mut ns: Vec<u64> = points.iter().map(|p| p.n).collect();
    ns.sort_unstable();
    ns.iter()
        .map(|n| format!("A{n}"))
        .collect::<Vec<_>>()
        .join(",")
}
