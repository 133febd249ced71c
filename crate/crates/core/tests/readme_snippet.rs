use localmodel::root_data::realize;
use localmodel::{adm, make_iwahori_weyl, point_count_poly};
use localmodel::{Caps, Family, GroupSpec, ParahoricSubgroup};

#[test]
fn readme_snippet() -> localmodel::Result<()> {
    let spec = GroupSpec {
        family: Family::Gl,
        rank: 2,
        automorphism: None,
    };
    let (datum, pin) = realize(&spec)?;
    let group = make_iwahori_weyl(&datum, &pin, Caps::default())?;

    let set = adm(&group, &[1, 0])?;
    assert_eq!(set.elements.len(), 3);

    let poly = point_count_poly(&group, &[1, 0], &ParahoricSubgroup::iwahori())?;
    assert_eq!(poly.coeffs, vec![1, 2]);
    Ok(())
}
