import pytest

from leechdesign.cli import main


@pytest.mark.slow
def test_cli_all_passes_end_to_end(tmp_path):
    out = tmp_path / "out"
    code = main(["all", "--out", str(out)])
    assert code == 0
    for stage in ("design", "coherent", "unique", "seven"):
        assert (out / f"report_{stage}.json").exists()
        assert (out / f"report_{stage}.canonical.json").exists()
    assert (out / "design.txt").exists()
    assert (out / "tensor.txt").exists()
    assert (out / "candidates.txt").exists()


@pytest.mark.slow
def test_cli_alternate_anchors_give_identical_tensor(tmp_path):
    alt = "0,0,4,4" + ",0" * 20 + ";1,1,1,-3" + ",1" * 20
    out1 = tmp_path / "canonical"
    out2 = tmp_path / "alternate"
    assert main(["build", "--out", str(out1)]) == 0
    assert main(["build", "--anchors", alt, "--out", str(out2)]) == 0
    assert (
        main(["verify-coherent", "--in", str(out1 / "design.txt"), "--out", str(out1)])
        == 0
    )
    assert (
        main(["verify-coherent", "--in", str(out2 / "design.txt"), "--out", str(out2)])
        == 0
    )
    assert (out1 / "tensor.txt").read_bytes() == (out2 / "tensor.txt").read_bytes()
