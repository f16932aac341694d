import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from framelets.analysis import verify_tight
from framelets.bankfile import BankFile, parse_bank, read_bank, serialize_bank, write_bank
from framelets.catalog import initial_bank, lowpass
from framelets.errors import BankSyntaxError, DuplicateFilter, IoFailure, MissingLowpass
from framelets.laurent import LaurentPoly

HAAR = """FRAMELET-BANK 1
field real
# the Haar pair
filter a lo 0 len 2
0.5 0
0.5 0
filter b1 lo 0 len 2
0.5 0
-0.5 0
"""

finite = st.floats(allow_nan=False, allow_infinity=False, width=64)
polys = st.builds(LaurentPoly, st.lists(st.builds(complex, finite, finite), min_size=1, max_size=6),
                  st.integers(-5, 5))


class TestParse:
    def test_haar(self):
        bf = parse_bank(HAAR)
        assert bf.field == "real" and bf.names == ("a", "b1")
        assert bf.get("a") == LaurentPoly([0.5, 0.5])
        assert bf.get("b1") == LaurentPoly([0.5, -0.5])
        assert verify_tight(bf.to_bank()).ok

    def test_exponent_notation_and_blank_lines(self):
        text = "FRAMELET-BANK 1\n\nfield complex\nfilter a lo -1 len 1\n1e0 -0.0E+00\nfilter bp lo 0 len 0\n"
        bf = parse_bank(text)
        assert bf.get("a") == LaurentPoly.monomial(-1) and bf.get("bp").is_zero

    def test_missing_lowpass(self):
        with pytest.raises(MissingLowpass):
            parse_bank("FRAMELET-BANK 1\nfield real\nfilter b1 lo 0 len 1\n1 0\n")

    def test_duplicate(self):
        with pytest.raises(DuplicateFilter):
            parse_bank(HAAR + "filter b1 lo 0 len 1\n1 0\n")

    def test_unknown_name(self):
        with pytest.raises(BankSyntaxError) as exc:
            parse_bank(HAAR.replace("filter b1", "filter c7"))
        assert exc.value.line == 7 and exc.value.column == 8

    @pytest.mark.parametrize("text,line,col", [
        ("", 1, 1),
        ("FRAMELET-BANK 2\nfield real\n", 1, 15),
        ("FRAMELET-BANK 1\nfield quaternion\n", 2, 1),
        ("FRAMELET-BANK 1\nfield real\nfilter a lo x len 1\n1 0\n", 3, 13),
        ("FRAMELET-BANK 1\nfield real\nfilter a lo 0 len 2\n1 0\n", 3, 1),
        ("FRAMELET-BANK 1\nfield real\nfilter a lo 0 len 1\n1 zero\n", 4, 3),
        ("FRAMELET-BANK 1\nfield real\nfilter a lo 0 len 1\n1\n", 4, 1),
    ])
    def test_syntax_positions(self, text, line, col):
        with pytest.raises(BankSyntaxError) as exc:
            parse_bank(text)
        assert (exc.value.line, exc.value.column) == (line, col)

    def test_real_field_rejects_complex(self):
        with pytest.raises(BankSyntaxError):
            parse_bank(HAAR.replace("-0.5 0", "-0.5 0.1"))

    def test_highpass_required(self):
        text = "FRAMELET-BANK 1\nfield real\nfilter a lo 0 len 1\n1 0\n"
        with pytest.raises(BankSyntaxError):
            parse_bank(text)
        assert parse_bank(text, require_highpass=False).get("a") == LaurentPoly([1.0])


class TestRoundTrip:
    @given(polys, polys)
    def test_exact(self, a, b):
        bf = BankFile("complex", (("a", a), ("bp", b)))
        assert parse_bank(serialize_bank(bf)) == bf

    def test_example_bank(self, tmp_path):
        bf = BankFile.from_bank(initial_bank("bspline4"))
        write_bank(bf, tmp_path / "b.bank")
        again = read_bank(tmp_path / "b.bank")
        assert again == bf and again.to_bank().field == "real"

    def test_no_negative_zero(self):
        text = serialize_bank(BankFile.lowpass_only(LaurentPoly([-0.0 + 0j, 1.0])))
        assert "-0 " not in text and "\n-0\n" not in text

    def test_io_errors(self, tmp_path):
        with pytest.raises(IoFailure):
            read_bank(tmp_path / "absent.bank")
        with pytest.raises(IoFailure):
            write_bank(BankFile.lowpass_only(lowpass("haar")), tmp_path / "no" / "x.bank")


class TestGoldenFiles:
    @pytest.mark.parametrize("name", ["haar", "bspline2", "bspline4", "interp6", "lowpass6"])
    def test_initial_banks(self, data_dir, name):
        bank = read_bank(data_dir / f"{name}.bank").to_bank()
        assert verify_tight(bank, 1e-12).ok

    @pytest.mark.parametrize("name", ["bspline2", "bspline4", "interp6", "lowpass6"])
    def test_lowpass_files_match_catalog(self, data_dir, name):
        a = read_bank(data_dir / f"{name}_a.bank", require_highpass=False).get("a")
        assert a.allclose(lowpass(name), 1e-16)

    def test_exact_form_bspline2(self, data_dir):
        bf = read_bank(data_dir / "bspline2_N0.bank")
        bp = bf.get("bp")
        r2 = math.sqrt(2)
        want = np.array([-(3 * r2 + 6j), 6 * r2, -3 * r2 + 6j]) / 24
        np.testing.assert_allclose(bp.coeffs, want, atol=1e-16)
        assert verify_tight(bf.to_bank(), 1e-12).ok
