//! The commutative alternative algebra `C` built on the Grassmann algebra:
//! ordinary exterior product when either factor is even, and
//! `x*d(y) - d(x)*y` when both factors are odd.
//!
//! With this sign the associator of three odd elements is `-d(xyz)`.

use crate::grassmann::GElement;
use crate::packed;

/// Product in `C`. Mixed-parity inputs are split into homogeneous parts.
pub fn cmul(x: &GElement, y: &GElement) -> GElement {
    if let Some(v) = cmul_packed(x, y) {
        return v;
    }
    let (x0, x1) = (x.even_part(), x.odd_part());
    let (y0, y1) = (y.even_part(), y.odd_part());
    let mut out = x0.wedge(y);
    out = &out + &x1.wedge(&y0);
    if !x1.is_zero() && !y1.is_zero() {
        out = &out + &odd_product(&x1, &y1);
    }
    out
}

fn cmul_packed(x: &GElement, y: &GElement) -> Option<GElement> {
    let (x0, x1) = packed::split_parity(packed::pack(x)?);
    let (y0, y1) = packed::split_parity(packed::pack(y)?);
    let mut acc = packed::with_capacity(x.len() * y.len());
    packed::wedge_into(&mut acc, &x0, &y0, 1);
    packed::wedge_into(&mut acc, &x0, &y1, 1);
    packed::wedge_into(&mut acc, &x1, &y0, 1);
    if !x1.is_empty() && !y1.is_empty() {
        packed::wedge_into(&mut acc, &x1, &packed::derive(&y1)?, 1);
        packed::wedge_into(&mut acc, &packed::derive(&x1)?, &y1, 2);
    }
    Some(packed::unpack(acc))
}

/// `x*d(y) - d(x)*y` for homogeneous odd `x`, `y`.
pub fn odd_product(x: &GElement, y: &GElement) -> GElement {
    let left = x.wedge(&y.derive());
    let right = x.derive().wedge(y);
    &left - &right
}

/// `(x*y)*z - x*(y*z)` in `C`.
pub fn associator(x: &GElement, y: &GElement, z: &GElement) -> GElement {
    let lhs = cmul(&cmul(x, y), z);
    let rhs = cmul(x, &cmul(y, z));
    &lhs - &rhs
}

/// Shortcut for the associator of three odd elements: `-d(x y z)` with the
/// plain exterior product.
pub fn odd_associator(x: &GElement, y: &GElement, z: &GElement) -> GElement {
    -&x.wedge(y).wedge(z).derive()
}

/// `(x*x)*x`. Zero on the subalgebra generated by underived generators;
/// the result is returned as is so callers can inspect a failure.
pub fn cube(x: &GElement) -> GElement {
    cmul(&cmul(x, x), x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf3::Gf3;

    fn g(s: &str) -> GElement {
        s.parse().unwrap()
    }

    #[test]
    fn cmul_of_generators() {
        assert_eq!(cmul(&g("[0]"), &g("[1(0)]")), g("2*[0(1).1(0)] + [0.1(1)]"));
        assert_eq!(cmul(&g("[0]"), &g("[0]")), g("2*[0.0(1)]"));
        let x = g("[0] + [0.1(0)] + 2*[2]");
        assert_eq!(cmul(&GElement::one(), &x), x);
        assert_eq!(cmul(&x, &GElement::one()), x);
    }

    #[test]
    fn associator_of_generators_is_minus_d() {
        let (a, b, c) = (GElement::generator(0), GElement::generator(1), GElement::generator(2));
        let expected = g("2*[0(1).1(0).2] + 2*[0.1(1).2] + 2*[0.1(0).2(1)]");
        assert_eq!(associator(&a, &b, &c), expected);
        assert_eq!(odd_associator(&a, &b, &c), expected);
    }

    #[test]
    fn associator_degenerate_cases() {
        let x = g("[0] + [1(0).2.3]");
        let y = g("[2] + [0.1(0)]");
        assert!(associator(&x, &x, &y).is_zero());
        assert!(associator(&x, &y, &y).is_zero());
        assert!(associator(&GElement::one(), &x, &y).is_zero());
    }

    #[test]
    fn cubes() {
        assert!(cube(&g("[0]")).is_zero());
        assert_eq!(cube(&GElement::one()), GElement::one());
        let x = cmul(&g("[0]"), &g("[1(0)]"));
        assert!(cube(&(&x + &g("[2]"))).is_zero());
        assert_eq!(cube(&GElement::one().scale(Gf3::TWO)), GElement::one().scale(Gf3::TWO));
    }
}
