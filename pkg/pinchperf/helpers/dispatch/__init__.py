from pinchperf.helpers.dispatch.dispatch import Dispatch
