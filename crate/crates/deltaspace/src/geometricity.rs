//! Decides whether a polynomial is a linear combination of the face
//! volume polynomials, with an exact machine-checkable certificate.
//!
//! Each face polynomial V_J is homogeneous of degree |J| and owns the
//! squarefree monomial on J: no other basis element contains it. The
//! candidate coefficients are therefore read off directly from the
//! squarefree coefficients of the input, and the verdict reduces to an
//! exact residual check.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::diffops::OperatorContext;
use crate::error::Result;
use crate::mpoly::MPoly;
use crate::rational::{render_rat, Rat};
use crate::rootsys::CartanSystem;
use crate::volumes::{indicator, Normalization, VolumeBasis};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometricityStatus {
    /// The input equals the certified combination of face volumes.
    Geometric,
    /// The input fails the defining differential conditions; the witness
    /// records the first failing operator index and polynomial.
    NotInSpace,
    /// The input passes the differential conditions but the unique
    /// squarefree-matching combination leaves a nonzero residual.
    InternalResidual,
}

impl GeometricityStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            GeometricityStatus::Geometric => "geometric",
            GeometricityStatus::NotInSpace => "not-in-space",
            GeometricityStatus::InternalResidual => "internal-residual",
        }
    }
}

#[derive(Debug, Clone)]
pub struct GeometricityCertificate {
    pub status: GeometricityStatus,
    /// Coefficient of V_J for each subset J (0-based), present only for
    /// the Geometric status.
    pub coefficients: BTreeMap<Vec<usize>, Rat>,
    /// Failing operator index (0-based) and offending polynomial for
    /// NotInSpace.
    pub witness: Option<(usize, MPoly)>,
    /// The nonzero difference input - combination for InternalResidual.
    pub residual: Option<MPoly>,
}

impl GeometricityCertificate {
    pub fn is_geometric(&self) -> bool {
        self.status == GeometricityStatus::Geometric
    }

    /// JSON form with 1-based subset keys like "[1,3]" and rationals as
    /// "p/q" strings.
    pub fn to_json(&self) -> serde_json::Value {
        let coefficients: serde_json::Map<String, serde_json::Value> = self
            .coefficients
            .iter()
            .map(|(subset, c)| {
                let key = format!(
                    "[{}]",
                    subset
                        .iter()
                        .map(|i| (i + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                );
                (key, serde_json::Value::String(render_rat(c)))
            })
            .collect();
        let witness = match &self.witness {
            Some((i, offending)) => serde_json::json!({
                "i": i + 1,
                "offending": offending.render(),
            }),
            None => serde_json::Value::Null,
        };
        let mut obj = serde_json::json!({
            "status": self.status.as_str(),
            "coefficients": coefficients,
            "witness": witness,
        });
        if let Some(residual) = &self.residual {
            obj["residual"] = serde_json::Value::String(residual.render());
        }
        obj
    }
}

/// Attempts to write `p` as a combination of the face volume polynomials
/// of `sys` under the given normalization.
pub fn decompose(
    sys: &CartanSystem,
    p: &MPoly,
    normalization: Normalization,
) -> Result<GeometricityCertificate> {
    let basis = VolumeBasis::build(sys, normalization)?;
    decompose_with_basis(sys, p, &basis)
}

/// Like [`decompose`], reusing an already interpolated basis.
pub fn decompose_with_basis(
    sys: &CartanSystem,
    p: &MPoly,
    basis: &VolumeBasis,
) -> Result<GeometricityCertificate> {
    let n = sys.rank();
    assert_eq!(p.nvars(), n, "polynomial and system rank must agree");
    let ctx = OperatorContext::new(sys.matrix().clone());
    let membership = ctx.in_d(p);
    if !membership.verdict {
        return Ok(GeometricityCertificate {
            status: GeometricityStatus::NotInSpace,
            coefficients: BTreeMap::new(),
            witness: Some((
                membership.failing_index.unwrap(),
                membership.offending.unwrap(),
            )),
            residual: None,
        });
    }
    let mut coefficients = BTreeMap::new();
    let mut combination = MPoly::zero(n);
    for (subset, vpoly) in basis.iter() {
        let marker = indicator(n, subset);
        let mu = p.coefficient(&marker) / vpoly.coefficient(&marker);
        if !mu.is_zero() {
            combination = combination.add(&vpoly.scale(&mu));
        }
        coefficients.insert(subset.to_vec(), mu);
    }
    let residual = p.sub(&combination);
    if residual.is_zero() {
        // re-verify before emitting the certificate
        let mut check = MPoly::zero(n);
        for (subset, mu) in &coefficients {
            check = check.add(&basis.get(subset).unwrap().scale(mu));
        }
        assert_eq!(&check, p, "certificate failed re-verification");
        Ok(GeometricityCertificate {
            status: GeometricityStatus::Geometric,
            coefficients,
            witness: None,
            residual: None,
        })
    } else {
        Ok(GeometricityCertificate {
            status: GeometricityStatus::InternalResidual,
            coefficients: BTreeMap::new(),
            witness: None,
            residual: Some(residual),
        })
    }
}

pub fn is_geometric(sys: &CartanSystem, p: &MPoly, normalization: Normalization) -> Result<bool> {
    Ok(decompose(sys, p, normalization)?.is_geometric())
}

/// Builds the combination with the given coefficients, decomposes it
/// back, and checks the round trip recovers the coefficients exactly.
pub fn round_trip(
    sys: &CartanSystem,
    coefficients: &BTreeMap<Vec<usize>, Rat>,
    normalization: Normalization,
) -> Result<bool> {
    let basis = VolumeBasis::build(sys, normalization)?;
    round_trip_with_basis(sys, coefficients, &basis)
}

/// Like [`round_trip`], reusing an already interpolated basis.
pub fn round_trip_with_basis(
    sys: &CartanSystem,
    coefficients: &BTreeMap<Vec<usize>, Rat>,
    basis: &VolumeBasis,
) -> Result<bool> {
    let mut p = MPoly::zero(sys.rank());
    for (subset, mu) in coefficients {
        let vpoly = basis
            .get(subset)
            .unwrap_or_else(|| panic!("unknown subset {subset:?}"));
        p = p.add(&vpoly.scale(mu));
    }
    let cert = decompose_with_basis(sys, &p, basis)?;
    if !cert.is_geometric() {
        return Ok(false);
    }
    for (subset, mu) in &cert.coefficients {
        let expected = coefficients.get(subset).cloned().unwrap_or_else(Rat::zero);
        if *mu != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat2};
    use crate::volumes::face_volume_polynomial;

    fn sys(label: &str) -> CartanSystem {
        CartanSystem::from_label(label).unwrap()
    }

    fn p(text: &str, nvars: usize) -> MPoly {
        MPoly::parse(text, nvars).unwrap()
    }

    #[test]
    fn volume_polynomial_is_geometric() {
        let s = sys("A2");
        let v = face_volume_polynomial(&s, &[0, 1], Normalization::Weight).unwrap();
        let cert = decompose(&s, &v, Normalization::Weight).unwrap();
        assert!(cert.is_geometric());
        assert_eq!(cert.coefficients[&vec![0, 1]], rat(1));
        assert_eq!(cert.coefficients[&vec![]], rat(0));
        assert_eq!(cert.coefficients[&vec![0]], rat(0));
    }

    #[test]
    fn mixed_combination_recovers_coefficients() {
        let s = sys("A2");
        let norm = Normalization::Root;
        let mut coefs = BTreeMap::new();
        coefs.insert(vec![], rat(5));
        coefs.insert(vec![0], rat2(-3, 2));
        coefs.insert(vec![1], rat(7));
        coefs.insert(vec![0, 1], rat2(4, 3));
        assert!(round_trip(&s, &coefs, norm).unwrap());
    }

    #[test]
    fn not_in_space_witness() {
        let s = sys("A2");
        let cert = decompose(&s, &p("x1^2", 2), Normalization::Weight).unwrap();
        assert_eq!(cert.status, GeometricityStatus::NotInSpace);
        let (i, offending) = cert.witness.unwrap();
        assert_eq!(i, 0);
        assert!(!offending.is_zero());
        assert!(cert.coefficients.is_empty());
    }

    #[test]
    fn perturbations_are_rejected() {
        // perturbing a geometric polynomial by a single monomial leaves
        // the space, so the witness path fires
        let s = sys("A2");
        let v = face_volume_polynomial(&s, &[0, 1], Normalization::Weight).unwrap();
        for bump in ["x1*x2", "x1^2"] {
            let cert = decompose(&s, &v.add(&p(bump, 2)), Normalization::Weight).unwrap();
            assert_eq!(cert.status, GeometricityStatus::NotInSpace);
        }
        // a linear bump stays inside the space and reads off as a face
        // coefficient (V_{2} = 2*x2 in weight normalization)
        let cert = decompose(&s, &v.add(&p("x2", 2)), Normalization::Weight).unwrap();
        assert!(cert.is_geometric());
        assert_eq!(cert.coefficients[&vec![1]], rat2(1, 2));
        // scaling stays geometric
        let cert = decompose(&s, &v.scale(&rat2(-2, 7)), Normalization::Weight).unwrap();
        assert!(cert.is_geometric());
        assert_eq!(cert.coefficients[&vec![0, 1]], rat2(-2, 7));
    }

    #[test]
    fn certificate_json_shape() {
        let s = sys("A2");
        let mut coefs = BTreeMap::new();
        coefs.insert(vec![0, 1], rat2(4, 3));
        let basis = VolumeBasis::build(&s, Normalization::Weight).unwrap();
        let q = basis.get(&[0, 1]).unwrap().scale(&rat2(4, 3));
        let cert = decompose(&s, &q, Normalization::Weight).unwrap();
        let json = cert.to_json();
        assert_eq!(json["status"], "geometric");
        assert_eq!(json["coefficients"]["[1,2]"], "4/3");
        assert_eq!(json["coefficients"]["[]"], "0");
        assert!(json["witness"].is_null());
        let bad = decompose(&s, &p("x1^3", 2), Normalization::Weight).unwrap();
        let json = bad.to_json();
        assert_eq!(json["status"], "not-in-space");
        assert_eq!(json["witness"]["i"], 1);
    }

    #[test]
    fn zero_polynomial_is_geometric_with_zero_coefficients() {
        let s = sys("A2");
        let cert = decompose(&s, &MPoly::zero(2), Normalization::Weight).unwrap();
        assert!(cert.is_geometric());
        assert!(cert.coefficients.values().all(|c| c.is_zero()));
    }
}
