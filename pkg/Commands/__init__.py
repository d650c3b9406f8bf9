"""
Commands - Command-line surface of polarsynth: run configuration, subcommands and reports
"""

from Commands.RunConfig import (
    RunConfig, ActionSpec, CurveSpec, ProfileSpec, load_json, load_action, load_profile,
    action_from_dict, profile_from_dict
)
from Commands.reports import RunReport, canonical, status_line
from Commands.commands import (
    cmd_action_info, cmd_orbit, cmd_synth, cmd_verify, cmd_export, cmd_benchmark, synthesize,
    run_command
)

__all__ = [
    'RunConfig',
    'ActionSpec',
    'CurveSpec',
    'ProfileSpec',
    'load_json',
    'load_action',
    'load_profile',
    'action_from_dict',
    'profile_from_dict',

    'RunReport',
    'canonical',
    'status_line',

    'cmd_action_info',
    'cmd_orbit',
    'cmd_synth',
    'cmd_verify',
    'cmd_export',
    'cmd_benchmark',
    'synthesize',
    'run_command'
]
