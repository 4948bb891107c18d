use odlcalc::localize::{integrate, scenes};

#[test]
fn every_scene_integrates_to_its_expected_value() {
    for (i, (scene, expected)) in scenes::catalogue().into_iter().enumerate() {
        let start = std::time::Instant::now();
        let r = integrate(&scene.tower, &scene.integrand, 100 + i as u64);
        eprintln!("{}: {:?} in {:?}", scene.name, r.as_ref().map(|r| r.value.to_string()), start.elapsed());
        assert_eq!(r.unwrap().value, expected.into(), "{}", scene.name);
    }
}
