from enum import Enum
from unittest import TestCase

from agdmm import (
    AuditMessage,
    Importance,
    NumericalSemigroup,
    Severity,
    SolutionPair,
    available_checks,
    construct,
    register_check,
)

INVALID_IMPORTANCE_MESSAGE = (
    "of custom check \\({name}\\) is not a valid importance level! Please choose one of Importance.CRITICAL, "
    "Importance.BEST_PRACTICE_VIOLATION, or Importance.BEST_PRACTICE_SUGGESTION."
)


class TestRegisterClass(TestCase):
    @classmethod
    def setUpClass(cls):
        cls.semigroup = NumericalSemigroup.from_generators([3, 4])
        cls.solution = construct(semigroup=cls.semigroup, kind="poly", method="apery", m=2, n=2)

    def setUp(self):
        self.registered_checks = list(available_checks)

    def tearDown(self):
        available_checks[:] = self.registered_checks

    def test_register_importance_error_non_enum_type(self):
        bad_importance = "test_bad_importance"

        with self.assertRaisesRegex(ValueError, INVALID_IMPORTANCE_MESSAGE.format(name="bad_importance_function")):

            @register_check(importance=bad_importance, target_type=NumericalSemigroup)
            def bad_importance_function():
                pass

    def test_register_importance_error_enum_type(self):
        class SomeRandomEnum(Enum):
            random_name = -1

        bad_importance = SomeRandomEnum.random_name

        with self.assertRaisesRegex(ValueError, INVALID_IMPORTANCE_MESSAGE.format(name="bad_importance_function")):

            @register_check(importance=bad_importance, target_type=NumericalSemigroup)
            def bad_importance_function():
                pass

    def test_register_importance_error_forbidden_error_level(self):
        with self.assertRaisesRegex(
            ValueError, INVALID_IMPORTANCE_MESSAGE.format(name="forbidden_importance_function")
        ):

            @register_check(importance=Importance.ERROR, target_type=NumericalSemigroup)
            def forbidden_importance_function():
                pass

    def test_register_severity_error(self):
        bad_severity = "test_bad_severity"

        with self.assertRaisesRegex(
            ValueError,
            f"Indicated severity \\({bad_severity}\\) of custom check \\(bad_severity_function\\) is not a valid "
            "severity level! Please choose one of Severity.HIGH, Severity.LOW, or do not specify any severity.",
        ):

            @register_check(importance=Importance.BEST_PRACTICE_SUGGESTION, target_type=NumericalSemigroup)
            def bad_severity_function(semigroup: NumericalSemigroup):
                return AuditMessage(severity=bad_severity, message="")

            bad_severity_function(semigroup=self.semigroup)

    def test_register_all_severity_levels(self):
        importance = Importance.BEST_PRACTICE_SUGGESTION
        for severity in Severity:

            @register_check(importance=importance, target_type=NumericalSemigroup)
            def good_check_function(semigroup: NumericalSemigroup):
                return AuditMessage(severity=severity, message="")

            self.assertEqual(
                first=good_check_function(semigroup=self.semigroup),
                second=AuditMessage(
                    severity=severity,
                    message="",
                    importance=importance,
                    check_function_name="good_check_function",
                    object_type="NumericalSemigroup",
                    object_name="<3, 4>",
                    location="/solution/semigroup",
                ),
            )

    def test_register_missing_severity(self):
        importance = Importance.BEST_PRACTICE_SUGGESTION

        @register_check(importance=importance, target_type=SolutionPair)
        def good_check_function(solution: SolutionPair):
            return AuditMessage(message="")

        self.assertEqual(
            first=good_check_function(self.solution),
            second=AuditMessage(
                message="",
                importance=importance,
                severity=Severity.LOW,
                check_function_name="good_check_function",
                object_type="SolutionPair",
                object_name="apery poly",
                location="/solution",
            ),
        )

    def test_register_generator_of_messages(self):
        @register_check(importance=Importance.CRITICAL, target_type=NumericalSemigroup)
        def good_check_function(semigroup: NumericalSemigroup):
            for gap in semigroup.gaps:
                yield AuditMessage(message=f"gap {gap}")

        messages = good_check_function(self.semigroup)
        assert [message.message for message in messages] == ["gap 1", "gap 2", "gap 5"]
        assert all(message.importance is Importance.CRITICAL for message in messages)

    def test_register_empty_generator_gives_none(self):
        @register_check(importance=Importance.CRITICAL, target_type=NumericalSemigroup)
        def good_check_function(semigroup: NumericalSemigroup):
            yield from ()

        assert good_check_function(self.semigroup) is None

    def test_register_available_checks_all_importance_levels_same_target_type(self):
        for importance in [
            Importance.CRITICAL,
            Importance.BEST_PRACTICE_VIOLATION,
            Importance.BEST_PRACTICE_SUGGESTION,
        ]:

            @register_check(importance=importance, target_type=SolutionPair)
            def good_check_function():
                pass

            assert good_check_function in available_checks

    def test_register_available_checks_different_importance_levels_different_target_types(self):
        @register_check(importance=Importance.BEST_PRACTICE_SUGGESTION, target_type=NumericalSemigroup)
        def good_check_function_1():
            pass

        assert good_check_function_1 in available_checks

        @register_check(importance=Importance.BEST_PRACTICE_VIOLATION, target_type=SolutionPair)
        def good_check_function_2():
            pass

        assert good_check_function_2 in available_checks
