//! Bundled sample algebras. The four-dimensional algebra here is the
//! standard small example that is simple but neither semisimple nor
//! cosemisimple; the engine needs at least one such input and verifies all
//! of its properties itself.

use crate::hopf::{FactorTag, Hopf, HopfAlgebra};
use crate::scalar::Field;

/// Basis `1, g, x, gx` with `g^2 = 1`, `x^2 = 0`, `xg = -gx`,
/// `Delta(g) = g (x) g`, `Delta(x) = x (x) 1 + g (x) x`, `S(x) = -gx`.
pub fn sweedler(field: Field) -> Hopf {
    let one = field.one();
    let neg = field.int(-1);
    // indices: 0 = 1, 1 = g, 2 = x, 3 = gx
    let mult = vec![
        (0, 0, 0, one.clone()),
        (0, 1, 1, one.clone()),
        (0, 2, 2, one.clone()),
        (0, 3, 3, one.clone()),
        (1, 0, 1, one.clone()),
        (1, 1, 0, one.clone()),
        (1, 2, 3, one.clone()),
        (1, 3, 2, one.clone()),
        (2, 0, 2, one.clone()),
        (2, 1, 3, neg.clone()),
        (3, 0, 3, one.clone()),
        (3, 1, 2, neg.clone()),
    ];
    let unit = vec![one.clone(), field.zero(), field.zero(), field.zero()];
    let comult = vec![
        (0, 0, 0, one.clone()),
        (1, 1, 1, one.clone()),
        (2, 2, 0, one.clone()),
        (2, 1, 2, one.clone()),
        (3, 3, 1, one.clone()),
        (3, 0, 3, one.clone()),
    ];
    let counit = vec![one.clone(), one.clone(), field.zero(), field.zero()];
    let antipode = vec![
        (0, 0, one.clone()),
        (1, 1, one.clone()),
        (3, 2, neg.clone()),
        (2, 3, one.clone()),
    ];
    HopfAlgebra::from_parts(
        field,
        vec!["1".into(), "g".into(), "x".into(), "gx".into()],
        mult,
        unit,
        comult,
        counit,
        antipode,
        FactorTag::Generic,
    )
    .expect("fixture tensors are well-shaped")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::unit_vec;

    #[test]
    fn sweedler_passes_axioms() {
        let h = sweedler(Field::Q);
        assert!(h.verify_axioms().pass());
        assert_eq!(h.dim(), 4);
    }

    #[test]
    fn sweedler_is_not_semisimple_with_radical_x_gx() {
        let h = sweedler(Field::Q);
        assert!(!h.is_semisimple().unwrap());
        let rad = h.radical().unwrap();
        assert_eq!(rad.dim(), 2);
        assert!(rad.contains(&unit_vec(Field::Q, 4, 2)));
        assert!(rad.contains(&unit_vec(Field::Q, 4, 3)));
        assert!(!h.is_cosemisimple().unwrap());
    }

    #[test]
    fn sweedler_antipode_has_order_four() {
        let h = sweedler(Field::Q);
        let s = h.antipode_matrix();
        let s2 = s.compose(&s).unwrap();
        assert_ne!(s2, crate::matrix::Matrix::identity(Field::Q, 4));
        let s4 = s2.compose(&s2).unwrap();
        assert_eq!(s4, crate::matrix::Matrix::identity(Field::Q, 4));
    }

    #[test]
    fn semisimplicity_unsupported_over_prime_fields() {
        let h = sweedler(Field::GF { p: 5 });
        assert!(h.verify_axioms().pass());
        assert!(matches!(
            h.is_semisimple(),
            Err(crate::error::Error::Unsupported(_))
        ));
    }
}
