use canform::{
    contragredient_canonical, factor, is_contra_equivalent, jordan_canonical, parse_matrix, rank_profile, ContraBlock,
    ContraPair, Field, Matrix, Polynomial,
};

#[test]
fn jordan_from_a_matrix_file() {
    let a = parse_matrix("field q\n4 4\n0 -1 0 0\n1 0 0 0\n0 1 0 -1\n0 0 1 0\n").unwrap();
    let r = jordan_canonical(&a).unwrap();
    assert_eq!(r.form.blocks().len(), 1);
    let b = &r.form.blocks()[0];
    assert_eq!((b.prime.to_string(), b.power), ("x^2 + 1".to_string(), 2));
    assert_eq!(r.form_matrix, a);
}

#[test]
fn mixed_primes_over_gf3() {
    // x^2 + 1 is irreducible over GF(3); combine it with a 2x2 Jordan block at 2.
    let f = Field::Prime(3);
    let a = Matrix::block_diag(
        f,
        &[
            Matrix::from_i64s(f, 2, 2, &[0, -1, 1, 0]),
            Matrix::from_i64s(f, 2, 2, &[2, 0, 1, 2]),
        ],
    );
    let r = jordan_canonical(&a).unwrap();
    let shape: Vec<_> = r.form.blocks().iter().map(|b| (b.prime.to_string(), b.power)).collect();
    assert_eq!(shape, vec![("x + 1".to_string(), 2), ("x^2 + 1".to_string(), 1)]);
}

#[test]
fn identity_with_nilpotent_pair_is_already_canonical() {
    let q = Field::Rationals;
    let p = ContraPair::new(Matrix::identity(q, 2), Matrix::from_i64s(q, 2, 2, &[0, 0, 1, 0])).unwrap();
    let r = contragredient_canonical(&p).unwrap();
    assert_eq!(r.blocks, vec![ContraBlock::IdentityNilpotent(2)]);
    assert_eq!((&r.canonical_a, &r.canonical_b), (p.a(), p.b()));
}

#[test]
fn swapping_roles_changes_the_class() {
    let q = Field::Rationals;
    let a = Matrix::from_i64s(q, 2, 2, &[1, 0, 0, 0]);
    let n = Matrix::from_i64s(q, 2, 2, &[0, 0, 1, 0]);
    let p = ContraPair::new(a.clone(), n.clone()).unwrap();
    let swapped = ContraPair::new(n, a).unwrap();
    assert_ne!(rank_profile(&p), rank_profile(&swapped));
    assert!(!is_contra_equivalent(&p, &swapped).unwrap());
}

#[test]
fn factor_report() {
    let f = Polynomial::parse("2x^3 - 2", Field::Rationals).unwrap();
    let fac = factor(&f).unwrap();
    assert_eq!(fac.unit.to_string(), "2");
    let text: Vec<_> = fac.factors.iter().map(|(p, k)| format!("({p})^{k}")).collect();
    assert_eq!(text, ["(x - 1)^1", "(x^2 + x + 1)^1"]);
    assert_eq!(fac.expand(), f);
}
