//! The pointwise machinery on its own: Hamiltonian vector fields from
//! observable forms, the radial homotopy operator behind every
//! primitive, and the identity d(h(a)) + h(d(a)) = a that makes the
//! construction work.
//!
//! Run with `cargo run --example hamiltonian_fields`.

use momap::action::{hamiltonian_vector_field, volume_form, NPlecticStructure};
use momap::forms::{euler_homotopy, poincare_primitive, PolyForm};
use momap::linalg::rat_int;
use momap::poly::Poly;

fn main() -> momap::Result<()> {
    // The symplectic plane.  Observables are functions; their
    // Hamiltonian fields satisfy d(a) = -i_v omega.
    let s = NPlecticStructure::new(
        2,
        1,
        PolyForm::basis(2, &[0, 1]),
        vec![rat_int(0); 2],
    )?;
    let x = Poly::var(2, 0);
    let y = Poly::var(2, 1);
    let half = rat_int(1) / rat_int(2);
    let energy = x.mul(&x).add(&y.mul(&y)).scale(&half);
    for (label, f) in [("x1", x.clone()), ("x2", y.clone()), ("(x1^2+x2^2)/2", energy)] {
        let a = PolyForm::from_poly(f);
        let v = hamiltonian_vector_field(&s, &a, 4).expect("solvable at this degree");
        let residual = a.ext_d().add(&s.omega().contract_vec(&v));
        println!(
            "H = {label}: v = {} (d(H) + i_v omega = {})",
            v.render(),
            residual.render()
        );
    }
    println!();

    // The volume form on R^3.  Degree-1 observables have Hamiltonian
    // fields too; this is the 2-plectic analogue.
    let s3 = NPlecticStructure::new(3, 2, volume_form(3), vec![rat_int(0); 3])?;
    let alpha = PolyForm::dx(3, 0).scale_poly(&Poly::var(3, 2));
    let v = hamiltonian_vector_field(&s3, &alpha, 4).expect("solvable at this degree");
    println!("alpha = {}: v = {}", alpha.render(), v.render());
    println!();

    // The homotopy operator splits d: on any form, d(h(a)) + h(d(a))
    // reproduces a up to its value at the origin.
    let a = PolyForm::basis(3, &[0, 1]).scale_poly(&Poly::var(3, 2));
    let lhs = euler_homotopy(&a).ext_d().add(&euler_homotopy(&a.ext_d()));
    println!("a = {}", a.render());
    println!("d(h(a)) + h(d(a)) = {}", lhs.render());

    // On closed forms the primitive is exact on the nose.
    let closed = a.ext_d();
    let primitive = poincare_primitive(&closed)?;
    println!(
        "primitive of {}: {} (d of it = {})",
        closed.render(),
        primitive.render(),
        primitive.ext_d().render()
    );
    Ok(())
}
