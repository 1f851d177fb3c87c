use bevholt::{
    classify_all, closed_form_general, detect_period, iterate, InitialConditions, Model, Rational,
    Scalar,
};

fn main() -> bevholt::Result<()> {
    let r = |s: &str| Rational::parse_literal(s);
    let model = Model::constant(8, r("-1")?, r("12")?)?;
    let ic = InitialConditions::new(
        ["1", "2", "1", "-1/2", "1", "1/2", "-1/4", "1/2"]
            .into_iter()
            .map(r)
            .collect::<bevholt::Result<_>>()?,
    );

    let trajectory = iterate(&model, &ic, 64)?;
    let report = detect_period(&trajectory, 1e-9);
    println!("minimal period {:?} ({})", report.minimal_period, report.certified_by);

    // z_{8*3 + 5} straight from the closed form
    let z = closed_form_general(&model, &ic, 3, 5)?;
    assert_eq!(&z, &trajectory.values()[29]);

    for eq in classify_all(&model)? {
        println!("{} -> {}", eq.equilibrium.render(), eq.classification);
    }
    Ok(())
}
