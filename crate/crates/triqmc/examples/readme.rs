use triqmc::{
    builtin_integrand, convergence_study, parallelogram_discrepancy,
    Generator, ReferenceTriangle, ScrambleMode, Triangle,
};

fn main() -> Result<(), triqmc::Error> {
    let domain = Triangle::reference(ReferenceTriangle::EquilateralUnitArea);
    let points = Generator::Vdc { start: 0 }.sample(&domain, 256, 0)?;

    let report = parallelogram_discrepancy(&points)?;
    println!("D^P = {} (witness: {:?})", report.value, report.witness);

    let f = builtin_integrand(&domain, "cos2pi")?;
    let rows = convergence_study(
        &Generator::VdcScrambled { depth: 16, mode: ScrambleMode::Centroid },
        &domain,
        &f,
        &[64, 256, 1024],
        50,
        1,
    )?;
    for row in &rows {
        println!("{}", row.to_csv());
    }
    Ok(())
}
