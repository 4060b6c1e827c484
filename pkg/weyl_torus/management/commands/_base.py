import logging
from pathlib import Path

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from weyl_torus.emitters import emit
from weyl_torus.exceptions import (
    ClassMatchFailure,
    DualityFailure,
    NonIntegralBetti,
    WeylTorusError,
)
from weyl_torus.root_system import from_cartan
from weyl_torus.serializers import RunConfigSerializer
from weyl_torus.verification import SUITES, VerificationContext

logger = logging.getLogger(__name__)

MISMATCH = 2
VERIFICATION_ERRORS = (ClassMatchFailure, DualityFailure, NonIntegralBetti)
OPTION_NAMES = ("side", "format", "out", "jobs", "sample", "cache", "cartan")


class VerificationCommand(BaseCommand):
    """Runs `suites` and writes one report.

    Exit status: 0 when every check passes, 2 on a verification mismatch,
    1 on bad options or any other error.
    """

    suites = ()
    requires_system_checks = []
    _executing = False

    def add_arguments(self, parser):
        parser.add_argument(
            "--side", help="lattice side: root, weight or both"
        )
        parser.add_argument("--format", help="report format: json, md or csv")
        parser.add_argument("--out", help="write the report to this path")
        parser.add_argument("--jobs", type=int, help="worker threads")
        parser.add_argument(
            "--sample", type=int, help="elements in the random sweep"
        )
        parser.add_argument("--cache", help="group cache directory")
        parser.add_argument(
            "--cartan", help="JSON file with a custom simply-laced system"
        )

    def run_from_argv(self, argv):
        try:
            super().run_from_argv(argv)
        except SystemExit as status:
            # argparse exits with 2 on usage errors
            if status.code == MISMATCH and not self._executing:
                raise SystemExit(1) from status
            raise

    def execute(self, *args, **options):
        self._executing = True
        return super().execute(*args, **options)

    def load_config(self, options):
        data = {
            name: options[name]
            for name in OPTION_NAMES
            if options.get(name) is not None
        }
        data["command"] = self.__module__.rsplit(".", 1)[-1]
        data.setdefault("jobs", settings.WEYL_TORUS["JOBS"])
        data.setdefault("sample", settings.WEYL_TORUS["SAMPLE_SIZE"])
        config = RunConfigSerializer(data=data)
        if not config.is_valid():
            raise CommandError(f"invalid options: {dict(config.errors)}")
        return config.validated_data

    def build_context(self, config):
        system = config.get("cartan")
        rs = None
        if system is not None:
            rs = from_cartan(system["cartan"], name=system["name"])
        return VerificationContext(
            rs=rs,
            cache_path=config.get("cache"),
            jobs=config["jobs"],
            sample=config["sample"],
        )

    def run_suites(self, context, config):
        return [SUITES[name](context, config["side"]) for name in self.suites]

    def write_report(self, results, config):
        text = emit(results, config["format"])
        if config.get("out"):
            Path(config["out"]).write_text(text)
            self.stderr.write(f"Report written to {config['out']}")
        else:
            self.stdout.write(text, ending="")

    def handle(self, *args, **options):
        config = self.load_config(options)
        logger.debug("running %s with %s", config["command"], dict(config))
        try:
            context = self.build_context(config)
            results = self.run_suites(context, config)
        except VERIFICATION_ERRORS as error:
            raise CommandError(str(error), returncode=MISMATCH)
        except WeylTorusError as error:
            raise CommandError(str(error))
        self.write_report(results, config)
        self.finish(results)

    def finish(self, results):
        mismatches = [
            mismatch for result in results for mismatch in result.mismatches
        ]
        for mismatch in mismatches:
            self.stderr.write(self.style.ERROR(str(mismatch)))
        if mismatches:
            raise CommandError(
                f"{len(mismatches)} verification mismatches",
                returncode=MISMATCH,
            )
        self.stderr.write(
            self.style.SUCCESS(
                ", ".join(result.name for result in results) + ": all passed"
            )
        )
