//! Element-set families and set files.

use finrank::{tight_equation_coeffs, ElementSet, FamilySpec, Field};

fn show(name: &str, set: &ElementSet) {
    let items: Vec<String> = set.elements().iter().map(|x| x.to_string()).collect();
    println!("{name:>10} (A = {:>2}): {}", set.len(), items.join(" "));
}

fn main() -> finrank::Result<()> {
    show("geometric", &FamilySpec::geometric("2", 1, 8).materialize()?);
    show("signed", &FamilySpec::signed_geometric("3", 4).materialize()?);
    show("gaussian", &FamilySpec::GaussianUnitsScaled { scales: vec!["1".into(), "2".into()] }.materialize()?);
    let lattice = FamilySpec::LatticeBox {
        generators: vec!["2".into(), "3".into()],
        ranges: vec![(0, 4), (-1, 2)],
        sample_size: 10,
        seed: 7,
        field: Field::Q,
    };
    show("lattice", &lattice.materialize()?);

    // set files hold either a family or an explicit list
    let from_file = ElementSet::from_json(r#"{"family":{"variant":"geometric","base":"1/2","start":0,"stop":3}}"#)?;
    show("from json", &from_file);
    println!("{}", from_file.to_json());

    let tight: Vec<String> = tight_equation_coeffs(5, Field::Q)?.iter().map(|c| c.to_string()).collect();
    println!("tight equation in 5 variables: {}", tight.join(", "));
    Ok(())
}
