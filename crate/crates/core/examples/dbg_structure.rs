// temporary debug harness
fn main() {
    use exlie::AlgebraName::*;
    let name = F4;
    let t = std::time::Instant::now();
    let st = exlie::structure::StructureTensor::<f64>::build(name).unwrap();
    println!("build: {:?}", t.elapsed());
    let t = std::time::Instant::now();
    let data = exlie::level2::Level2Data::build(&st, exlie::level2::DEFAULT_SEED).unwrap();
    println!("level2 data (projectors+clebsch): {:?}", t.elapsed());
    println!("traces: {:?}", data.projectors.traces);
    let t = std::time::Instant::now();
    let rep = exlie::level2::verify_level2(&st, &data, &exlie::level2::Level2Options::default());
    println!("verify: {:?}, passed: {}", t.elapsed(), rep.all_passed());
    for c in rep.failures() {
        println!("FAIL {} residual {:.3e} tol {:.1e}", c.identity_id, c.residual, c.tolerance);
    }
    let worst = rep.checks.iter().map(|c| c.residual).fold(0.0f64, f64::max);
    println!("max residual: {worst:.3e}");
}
