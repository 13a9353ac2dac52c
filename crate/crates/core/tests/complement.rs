use frieze_core::dissection::enumerate_dissections;
use frieze_core::normalform::{check_complementary_symmetry, ComplementContext};
use frieze_core::{weight_matrix, Flavor, LaurentPoly};

#[test]
fn complements_are_involutions_on_entries() {
    for n in 3..=7 {
        for d in enumerate_dissections(n).unwrap() {
            let ctx = ComplementContext::new(&d);
            let wx = weight_matrix(&d, Flavor::X);
            let wq = weight_matrix(&d, Flavor::Xq);
            for i in 1..=n as i64 {
                for j in (1..=n as i64).filter(|&j| j != i) {
                    let f = wx.entry(i, j);
                    assert_eq!(&ctx.phi(&ctx.phi(f).unwrap()).unwrap(), f);
                    assert_eq!(&ctx.phi(f).unwrap(), wx.entry(j, i), "{d} ({i},{j})");
                    let g = wq.entry(i, j);
                    assert_eq!(&ctx.psi(&ctx.psi(g).unwrap()).unwrap(), g);
                    assert_eq!(&ctx.psi(g).unwrap(), wq.entry(j, i), "{d} ({i},{j})");
                }
            }
        }
    }
}

#[test]
fn out_of_caps_is_an_error() {
    let d = frieze_core::Dissection::build(5, [(2, 4), (2, 5)]).unwrap();
    let ctx = ComplementContext::new(&d);
    // Triangles have cap 1.
    assert_eq!(ctx.phi(&LaurentPoly::x(1)).unwrap(), &LaurentPoly::x(2) * &LaurentPoly::x(3));
    assert!(ctx.phi(&LaurentPoly::x(1).pow(2)).is_err());
    assert!(ctx.psi(&LaurentPoly::q(1).pow(2)).is_err());
    assert_eq!(ctx.phi(&LaurentPoly::one()).unwrap(), ctx.c());
}

#[test]
fn arithmetic_matrix_is_symmetric() {
    for d in enumerate_dissections(8).unwrap() {
        assert!(check_complementary_symmetry(&weight_matrix(&d, Flavor::Arithmetic)).holds);
    }
}
