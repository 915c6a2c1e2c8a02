import pytest

from ftl.descriptors import load_descriptor, loads_descriptor, parse_indices
from ftl.errors import DescriptorError


def idx(text):
    d = loads_descriptor(f"indices {text}")
    return parse_indices(d, d.entries[0], text)


def test_ranges():
    assert idx("1..4") == [1, 2, 3, 4]
    assert idx("10..50:20") == [10, 30, 50]
    assert idx("10..1000*10") == pytest.approx([10, 100, 1000])
    assert idx("3,5,8") == [3, 5, 8]


@pytest.mark.parametrize("bad", ["5..1", "1..4:0", "0..10*2", "1..10*1", "a..b"])
def test_bad_ranges(bad):
    with pytest.raises(DescriptorError, match="bad index range"):
        idx(bad)


def test_comments_and_lines():
    d = loads_descriptor("# header\n\ndomain egg1  # bundled\nsamples 12\n", "x.txt")
    assert [(e.line, e.key, e.args) for e in d.entries] == [(3, "domain", ["egg1"]), (4, "samples", ["12"])]
    assert d.int("samples") == 12 and d.domains()[0].name == "egg1"


def test_errors_name_file_and_line():
    d = loads_descriptor("samples 1\nsamples 2\n", "x.txt")
    with pytest.raises(DescriptorError) as exc:
        d.int("samples")
    assert str(exc.value).startswith("x.txt:2:")
    d = loads_descriptor("k one\n", "y.txt")
    with pytest.raises(DescriptorError, match="y.txt:1"):
        d.float("k")
    d = loads_descriptor("bogus 1\n", "z.txt")
    with pytest.raises(DescriptorError, match="unknown key 'bogus'"):
        d.check_keys({"domain"})


def test_points():
    d = loads_descriptor("point 0 0 -0.5 0\npoint 0.1 0 -0.2 0.3\n")
    pts = d.points()
    assert pts[0][1] == -0.5 and pts[1][1] == -0.2 + 0.3j


def test_unknown_domain():
    d = loads_descriptor("domain nowhere\n", "c.txt")
    with pytest.raises(DescriptorError, match="c.txt:1"):
        d.domains()


def test_domain_file_relative_to_descriptor(tmp_path):
    (tmp_path / "d.dom").write_text("m 2 box 1.0\n1 1 2.0 0.0\n")
    (tmp_path / "run.txt").write_text("domain d.dom\n")
    D = load_descriptor(tmp_path / "run.txt").domains()[0]
    assert D.P.coeff(1, 1) == 2.0 and D.name == "d"


def test_bare_domain_file(tmp_path):
    (tmp_path / "d.dom").write_text("# quartic\nm 4 box 1.0\n2 2 1.0 0.0\n")
    assert load_descriptor(tmp_path / "d.dom").domains()[0].m == 4
