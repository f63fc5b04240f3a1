use semikit::{closure_gauss_jordan, Descriptor64, Graph, Result};

fn main() -> Result<()> {
    let mut g = Graph::new();
    g.add_edge("a", "b", 2.0);
    g.add_edge("b", "c", 3.0);
    g.add_edge("a", "c", 10.0);

    // min-plus: cheapest routes
    let a = g.to_matrix(&Descriptor64::min_plus())?;
    let star = closure_gauss_jordan(&a)?;
    assert_eq!(star.get(0, 2).as_scalar(), Some(5.0));

    // the same elimination over the field computes (1 - A)⁻¹
    let resolvent = closure_gauss_jordan(&g.to_matrix(&Descriptor64::field())?)?;
    println!("{resolvent}");
    Ok(())
}
